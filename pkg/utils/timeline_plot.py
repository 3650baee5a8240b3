"""
Timeline Plot Module
Behaviour pattern rendered as action bands over time, with the internal
variables plotted underneath, saved as SVG
"""

import logging
import os
import sys

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402

# Add parent directory to path for config import
sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from config import get_output_config  # noqa: E402

from .behaviours import ExternalAction  # noqa: E402
from .simulator import RunResult, action_pattern  # noqa: E402

logger = logging.getLogger(__name__)

CURVES = ('thirst', 'hunger', 'fatigue', 'strength')


def plot_timeline(result: RunResult, path: str):
    """
    Save the action pattern and internal-state curves of a run

    Args:
        result: Finished run
        path: Destination .svg file
    """
    output = get_output_config()
    actions = list(ExternalAction)
    ticks = [event.tick for event in result.events]

    plt.rcParams['svg.hashsalt'] = 'ibenet'  # stable SVG element ids
    fig, (bands, curves) = plt.subplots(
        2, 1, sharex=True, figsize=(output['timeline_width'], output['timeline_height']),
        gridspec_kw={'height_ratios': [3, 2]})

    colors = plt.cm.tab20.colors
    for segment in action_pattern(result):
        row = actions.index(segment.action)
        bands.broken_barh([(segment.start_tick, segment.end_tick - segment.start_tick + 1)],
                          (row - 0.4, 0.8), facecolors=colors[row % len(colors)])
    bands.set_yticks(range(len(actions)))
    bands.set_yticklabels([a.value for a in actions])
    bands.set_ylim(-0.6, len(actions) - 0.4)
    bands.set_title(f"Behaviour pattern: {result.scenario_name} (seed {result.seed})")
    bands.grid(True, axis='x', alpha=0.3)

    for name in CURVES:
        curves.plot(ticks, [getattr(event.internal, name) for event in result.events], label=name)
    curves.set_ylim(0.0, 1.05)
    curves.set_xlabel('tick')
    curves.set_ylabel('level')
    curves.grid(True, alpha=0.3)
    curves.legend(loc='upper right')

    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
    logger.info(f"Wrote timeline plot to {path}")
