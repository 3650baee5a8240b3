"""
Command Line Application for the IBeNet Animat Simulator
Runs bundled or custom scenarios, batch comparisons and scenario validation
"""

import logging
import os
import sys

import click

from config import BUNDLED_SCENARIOS, LOGGING_CONFIG, get_scenario_path
from utils.batch import VARIANTS, compare_variants, run_variants
from utils.pattern_logger import (batch_frame, summarize_batch, summary_path,
                                  write_pattern, write_summary)
from utils.scenario_loader import ScenarioFormatError, dump_scenario, load_scenario
from utils.simulator import ScenarioValidationError, Termination, action_pattern, run
from utils.trace_logger import write_trace

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2


def resolve_scenario_path(name_or_path: str) -> str:
    """Accept a file path or the short name of a bundled fixture"""
    if not os.path.exists(name_or_path) and name_or_path in BUNDLED_SCENARIOS:
        return get_scenario_path(name_or_path)
    return name_or_path


def fail(message: str, code: int = EXIT_USAGE):
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def load_or_fail(name_or_path: str):
    path = resolve_scenario_path(name_or_path)
    try:
        return load_scenario(path)
    except FileNotFoundError:
        fail(f"Scenario file not found: {path}")
    except IsADirectoryError:
        fail(f"Scenario path is a directory: {path}")
    except PermissionError:
        fail(f"Cannot read scenario file: {path}")
    except ScenarioFormatError as e:
        fail(f"Malformed scenario file: {e}")
    except ScenarioValidationError as e:
        fail(str(e))


def write_outputs(writers):
    """
    Run (path, writer) pairs; on failure remove whatever was already written

    Returns:
        The list of written paths
    """
    written = []
    try:
        for path, writer in writers:
            writer(path)
            written.append(path)
    except OSError as e:
        for path in written:
            if os.path.exists(path):
                os.remove(path)
        fail(f"Cannot write output {e.filename or ''}: {e.strerror or e}")
    return written


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='Log per-tick selection details.')
def cli(verbose):
    """IBeNet animat simulator."""
    logging.basicConfig(level=logging.DEBUG if verbose else LOGGING_CONFIG['level'],
                        format=LOGGING_CONFIG['format'])


@cli.command('run')
@click.argument('scenario')
@click.option('--seed', type=int, default=None, help='Override the scenario seed.')
@click.option('--ticks', type=int, default=None, help='Override max_ticks.')
@click.option('--trace', 'trace_path', default=None, help='Trace output (JSON lines).')
@click.option('--pattern', 'pattern_path', default=None, help='Action pattern CSV output.')
@click.option('--svg', 'svg_path', default=None, help='Timeline plot output.')
def run_command(scenario, seed, ticks, trace_path, pattern_path, svg_path):
    """Run one simulation of SCENARIO (file path or bundled name)."""
    loaded = load_or_fail(scenario)
    try:
        result = run(loaded.with_overrides(seed=seed, max_ticks=ticks))
    except ScenarioValidationError as e:
        fail(str(e))
    except Exception as e:
        logger.exception("Simulation failed")
        fail(f"Internal error: {e}", EXIT_INTERNAL)

    pattern = action_pattern(result)
    writers = []
    if trace_path:
        writers.append((trace_path, lambda p: write_trace(result, p)))
    if pattern_path:
        writers.append((pattern_path, lambda p: write_pattern(pattern, p)))
        writers.append((summary_path(pattern_path), lambda p: write_summary(result, p)))
    if svg_path:
        from utils.timeline_plot import plot_timeline
        writers.append((svg_path, lambda p: plot_timeline(result, p)))
    write_outputs(writers)

    click.echo(f"{result.scenario_name}: {result.termination.value} after {len(result.events)} ticks, "
               f"{len(pattern)} pattern segments")
    if result.termination == Termination.DEATH:
        click.echo(f"Animat died at tick {result.events[-1].tick}")
    sys.exit(EXIT_OK)


@cli.command('batch')
@click.argument('scenario')
@click.option('--runs', type=click.IntRange(min=1), default=100, show_default=True)
@click.option('--seed-base', type=int, default=0, show_default=True)
@click.option('--variant', type=click.Choice(list(VARIANTS) + ['both']), default='explore',
              show_default=True)
@click.option('--workers', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--out', 'out_path', default=None, help='Per-run CSV output.')
@click.option('--progress/--no-progress', default=False)
def batch_command(scenario, runs, seed_base, variant, workers, out_path, progress):
    """Ticks until the first Drink over RUNS seeds of SCENARIO."""
    loaded = load_or_fail(scenario)
    variants = VARIANTS if variant == 'both' else (variant,)
    try:
        rows = run_variants(loaded, runs, seed_base, variants, workers, progress)
    except ScenarioValidationError as e:
        fail(str(e))
    except Exception as e:
        logger.exception("Batch failed")
        fail(f"Internal error: {e}", EXIT_INTERNAL)

    if out_path:
        write_outputs([(out_path, lambda p: batch_frame(rows).to_csv(p, index=False, lineterminator='\n'))])

    click.echo(summarize_batch(rows).to_string(index=False))
    if variant == 'both':
        click.echo(f"explore < wander, one-sided Mann-Whitney U: p = {compare_variants(rows):.3g}")
    sys.exit(EXIT_OK)


@cli.command('validate')
@click.argument('scenario')
def validate_command(scenario):
    """Check SCENARIO and echo its effective configuration."""
    loaded = load_or_fail(scenario)
    click.echo(dump_scenario(loaded), nl=False)
    sys.exit(EXIT_OK)


if __name__ == '__main__':
    cli()
