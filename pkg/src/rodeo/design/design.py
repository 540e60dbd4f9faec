import logging
import re

import numpy as np

from rodeo.exceptions import DesignFormatError, DimensionsIncompatible, WrongInput

logger = logging.getLogger(__name__)

_SPLIT = re.compile(r"[,\s]+")
_LEVELS = {"-1": -1, "−1": -1, "1": 1, "+1": 1}


class Design:
    """
    A two-level design: an N x m array of -1/+1 entries, one row per run and one
    column per factor. Designs are immutable once constructed.
    """

    def __init__(self, entries, label=""):
        """
        :param entries: An N x m array-like of -1/+1 values.
        :param label: Text identifier carried through reports.
        """
        entries = np.array(entries, dtype=np.int64)
        if entries.ndim != 2:
            raise DimensionsIncompatible(
                f"Design entries must be a 2-D array, got {entries.ndim} dimensions."
            )
        if entries.shape[0] < 2 or entries.shape[1] < 1:
            raise DimensionsIncompatible(
                f"Design needs at least 2 runs and 1 factor, got {entries.shape}."
            )
        bad = np.argwhere((entries != 1) & (entries != -1))
        if bad.size:
            row, col = bad[0] + 1
            raise DesignFormatError(
                f"Design entry at row {row}, column {col} is {entries[row - 1, col - 1]}, expected -1 or +1.",
                row=int(row),
                column=int(col),
            )

        entries.setflags(write=False)
        self._entries = entries
        self.label = label

    @property
    def entries(self):
        return self._entries

    @property
    def runs(self):
        return self._entries.shape[0]

    @property
    def factors(self):
        return self._entries.shape[1]

    # Short aliases matching the usual N x m notation
    N = runs
    m = factors

    def __repr__(self):
        return f"Design {self.label!r} ({self.runs} runs x {self.factors} factors)"

    def __eq__(self, other):
        if not isinstance(other, Design):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    def __hash__(self):
        return hash(self._entries.tobytes()) ^ hash(self._entries.shape)

    def column(self, j):
        return self._entries[:, j]

    def with_column(self, j, values):
        """
        Return a copy of this design with column `j` replaced by `values`.
        """
        entries = self._entries.copy()
        entries[:, j] = values
        return Design(entries, label=self.label)

    def is_level_balanced(self):
        """
        :return: True when every column sum is 0 (N even) or +-1 (N odd).
        """
        sums = np.abs(self._entries.sum(axis=0))
        return bool(np.all(sums <= self.runs % 2))


def parse_design(text, label=""):
    """
    Parse design text into a Design.

    Rows are runs. Tokens are separated by commas and/or whitespace and must be
    one of -1, +1 or 1. Blank lines and lines starting with '#' are skipped.
    Errors report the 1-based line of the text.

    :param text: Design file content.
    :param label: Label for the returned design.
    :return: A validated Design.
    """
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue

        tokens = [t for t in _SPLIT.split(line) if t]
        values = []
        for j, token in enumerate(tokens, start=1):
            value = _LEVELS.get(token)
            if value is None:
                msg = f"Design {label!r}: token {token!r} at line {lineno}, column {j} is not -1 or +1."
                logger.error(msg)
                raise DesignFormatError(msg, row=lineno, column=j)
            values.append(value)

        if rows and len(values) != len(rows[0]):
            msg = (
                f"Design {label!r}: line {lineno} has {len(values)} entries,"
                f" expected {len(rows[0])}."
            )
            logger.error(msg)
            raise DimensionsIncompatible(msg)
        rows.append(values)

    if not rows:
        raise DesignFormatError(f"Design {label!r}: no data rows found.")

    return Design(rows, label=label)


def project(d, cols):
    """
    Project a design onto an ordered subset of its factors.

    :param d: A Design.
    :param cols: Ordered sequence of distinct 0-based column indices.
    :return: The N x len(cols) design holding the selected columns in the given order.
    """
    cols = [int(c) for c in cols]
    if len(set(cols)) != len(cols):
        raise WrongInput(f"Projection columns {cols} contain duplicates.")
    if any(c < 0 or c >= d.factors for c in cols):
        raise WrongInput(
            f"Projection columns {cols} out of range for a design with {d.factors} factors."
        )
    if not cols:
        raise WrongInput("Projection needs at least one column.")

    return Design(d.entries[:, cols], label=d.label)


def model_matrix(d, model):
    """
    Build the model matrix of a design for a submodel or a maximal model.

    Column 0 is all ones, main effect columns copy design columns, and the column of
    interaction (f, g) is the elementwise product of columns f and g. Columns follow
    the model's effect order: intercept, mains, interactions.

    :param d: A Design.
    :param model: A Submodel or MaximalModel.
    :return: An N x (v_s + 1) integer numpy array.
    """
    mains, interactions = model.mains, model.interactions
    referenced = set(mains).union(*map(set, interactions)) if interactions else set(mains)
    if any(f < 0 or f >= d.factors for f in referenced):
        raise WrongInput(
            f"Model references factors {sorted(referenced)} but design {d.label!r} has {d.factors}."
        )

    x = d.entries
    columns = [np.ones(d.runs, dtype=np.int64)]
    columns.extend(x[:, f] for f in mains)
    columns.extend(x[:, f] * x[:, g] for f, g in interactions)
    return np.column_stack(columns)


def full_factorial(k, label=None):
    """
    The 2^k full factorial in standard order (first factor alternating fastest).
    """
    if k < 1:
        raise WrongInput(f"A full factorial needs k >= 1, got {k}.")
    runs = np.arange(2 ** k)
    entries = np.stack([np.where((runs >> j) & 1, 1, -1) for j in range(k)], axis=1)
    return Design(entries, label=label or f"2^{k}")
