"""
JSON Lines reports: one JSON object per line.
"""
import json
import logging

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)


def _default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (set, tuple)):
        return list(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def dumps(record):
    return json.dumps(record, default=_default)


def write_records(records, f):
    """
    Write an iterable of dicts to an open text stream, one JSON line each.
    """
    n = 0
    for record in records:
        f.write(dumps(record) + "\n")
        n += 1
    logger.debug(f"Wrote {n} records")
    return n


def read_records(f):
    return [json.loads(line) for line in f if line.strip()]


def records_frame(records):
    """
    Tabular view of flat records; nested lists are shown as strings.
    """
    df = pd.DataFrame(list(records))
    for col in df.columns:
        if df[col].map(lambda v: isinstance(v, (list, dict))).any():
            df[col] = df[col].map(dumps)
    return df
