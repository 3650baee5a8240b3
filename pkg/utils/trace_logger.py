"""
Trace Logger Module
Handles writing simulation traces as newline-delimited JSON records
"""

import json
import logging
import os
import sys
from typing import Any, Dict, List

# Add parent directory to path for config import
sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from config import get_output_config

from .perception import PerceptKind
from .physiology import INTERNAL_FIELDS
from .simulator import RunResult, TraceEvent

logger = logging.getLogger(__name__)

TRACE_FIELDS = (
    ['tick', 'z', 'x', 'theta', 'action', 'drive', 'drive_activation']
    + list(INTERNAL_FIELDS)
    + ['percepts', 'collision']
)


def _dumps(record: Dict[str, Any]) -> str:
    return json.dumps(record, separators=(',', ':'), ensure_ascii=True, allow_nan=False)


def trace_header(result: RunResult) -> Dict[str, Any]:
    output = get_output_config()
    return {
        'format': output['trace_format'],
        'version': output['trace_version'],
        'scenario': result.scenario_name,
        'seed': result.seed,
        'fields': TRACE_FIELDS,
        'percept_kinds': [kind.value for kind in PerceptKind],
    }


def event_record(event: TraceEvent) -> Dict[str, Any]:
    """One trace event as an ordered record"""
    record = {
        'tick': event.tick,
        'z': event.pose.position.z,
        'x': event.pose.position.x,
        'theta': event.pose.theta,
        'action': event.action.value,
        'drive': event.drive.value if event.drive else None,
        'drive_activation': event.drive_activation,
    }
    for name in INTERNAL_FIELDS:
        record[name] = getattr(event.internal, name)
    record['percepts'] = {kind.value: event.percepts.get(kind, 0.0) for kind in PerceptKind}
    record['collision'] = event.collision
    return record


def trace_lines(result: RunResult) -> List[str]:
    """Header line followed by one line per tick"""
    lines = [_dumps(trace_header(result))]
    lines.extend(_dumps(event_record(event)) for event in result.events)
    return lines


def write_trace(result: RunResult, path: str):
    """
    Write the trace of a run

    Args:
        result: Finished run
        path: Destination file; parent directories are created
    """
    lines = trace_lines(result)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as file:
        file.write('\n'.join(lines))
        file.write('\n')
    logger.info(f"Wrote {len(lines) - 1} trace records to {path}")


def read_trace(path: str) -> List[Dict[str, Any]]:
    """Parse a trace file back into its header and records"""
    with open(path, 'r', encoding='utf-8') as file:
        return [json.loads(line) for line in file if line.strip()]
