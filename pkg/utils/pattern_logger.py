"""
Pattern Logger Module
Handles behaviour-pattern CSV files, run summaries and batch summary tables
"""

import json
import logging
import os
from typing import Any, Dict, Iterable, List

import pandas as pd

from .simulator import (PatternSegment, RunResult, action_pattern,
                        count_switches, first_drive_winner)

logger = logging.getLogger(__name__)

PATTERN_COLUMNS = ['action', 'start_tick', 'end_tick']
BATCH_COLUMNS = ['variant', 'runs', 'censored', 'mean_ticks', 'median_ticks']


def _ensure_parent(path: str):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)


def pattern_frame(pattern: List[PatternSegment]) -> pd.DataFrame:
    return pd.DataFrame(
        [(segment.action.value, segment.start_tick, segment.end_tick) for segment in pattern],
        columns=PATTERN_COLUMNS,
    )


def write_pattern(pattern: List[PatternSegment], path: str):
    """Write the action pattern as CSV with columns action, start_tick, end_tick"""
    _ensure_parent(path)
    pattern_frame(pattern).to_csv(path, index=False, lineterminator='\n')
    logger.info(f"Wrote {len(pattern)} pattern segments to {path}")


def run_summary(result: RunResult) -> Dict[str, Any]:
    """First drive winner, switch count and final internal state of a run"""
    pattern = action_pattern(result)
    winner = first_drive_winner(result)
    return {
        'scenario': result.scenario_name,
        'seed': result.seed,
        'termination': result.termination.value,
        'ticks': len(result.events),
        'first_drive_winner': winner.value if winner else None,
        'first_action': pattern[0].action.value if pattern else None,
        'segments': len(pattern),
        'switches': count_switches(pattern),
        'final_state': result.final_state.as_dict(),
    }


def summary_path(pattern_path: str) -> str:
    root, _ = os.path.splitext(pattern_path)
    return f"{root}.summary.json"


def write_summary(result: RunResult, path: str):
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as file:
        json.dump(run_summary(result), file, indent=2)
        file.write('\n')
    logger.info(f"Wrote run summary to {path}")


def summarize_batch(rows: Iterable) -> pd.DataFrame:
    """
    Per-variant statistics of a batch

    Mean and median are taken over uncensored runs only; censored runs are
    counted separately.
    """
    frame = pd.DataFrame([
        {'variant': row.variant, 'seed': row.seed, 'ticks': row.first_drink_tick,
         'censored': row.censored}
        for row in rows
    ], columns=['variant', 'seed', 'ticks', 'censored'])

    summary = []
    for variant, group in frame.groupby('variant', sort=False):
        reached = group.loc[~group['censored'].astype(bool), 'ticks'].astype(float)
        summary.append({
            'variant': variant,
            'runs': int(len(group)),
            'censored': int(group['censored'].astype(bool).sum()),
            'mean_ticks': float(reached.mean()) if len(reached) else float('nan'),
            'median_ticks': float(reached.median()) if len(reached) else float('nan'),
        })
    return pd.DataFrame(summary, columns=BATCH_COLUMNS)


def batch_frame(rows: Iterable) -> pd.DataFrame:
    """One line per run, ordered by variant then seed"""
    frame = pd.DataFrame([
        {'variant': row.variant, 'seed': row.seed,
         'first_drink_tick': row.first_drink_tick if not row.censored else None,
         'censored': row.censored, 'termination': row.termination}
        for row in rows
    ], columns=['variant', 'seed', 'first_drink_tick', 'censored', 'termination'])
    return frame.astype({'first_drink_tick': 'Int64'})
