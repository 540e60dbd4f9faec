import logging
import platform
import struct
import subprocess
import sys
import traceback


def _environment_lines():
    from rodeo import config
    from rodeo.utils import get_full_version

    lines = [
        f"rodeo version: {get_full_version()}",
        f"Platform: {platform.platform()}",
        f"Python version: {sys.version}",
        f'Python 32/64 bit: {8 * struct.calcsize("P")}',
        "Configuration:",
    ]
    for name in config.sections():
        values = ", ".join(f"{k}={v}" for k, v in getattr(config, name).items())
        lines.append(f"  [{name}] {values}")

    lines.append("pip freeze output:")
    try:
        out = subprocess.check_output(["pip", "freeze"], stderr=subprocess.STDOUT)
        lines.extend(out.decode("utf8").splitlines())
    except Exception:  # noqa: E722
        lines.append("  (unavailable)")
    return lines


def _stack_lines(exc_traceback):
    # Oldest call first; locals are dropped when one of them cannot be rendered.
    try:
        summary = traceback.StackSummary.extract(
            traceback.walk_tb(exc_traceback), capture_locals=True
        )
    except Exception:  # noqa: E722
        summary = traceback.StackSummary.extract(traceback.walk_tb(exc_traceback))
    lines = ["Exception Details (most recent call last)"]
    for frame in summary.format():
        lines.extend(frame.rstrip("\n").split("\n"))
    return lines


def handle_exception(exc_type, exc_value, exc_traceback):
    """
    sys.excepthook for uncaught exceptions: writes rodeo.err.log with version,
    platform, configuration, installed packages and the stack with locals, logs
    the error as CRITICAL, then re-raises.

    :param exc_type: Exception type object
    :param exc_value: Exception value object (an instance of type exc_type)
    :param exc_traceback: The Traceback object associated with exc_value
    """
    if issubclass(exc_type, KeyboardInterrupt):
        sys.__excepthook__(exc_type, exc_value, exc_traceback)
        return

    lines = _environment_lines() + _stack_lines(exc_traceback)
    try:
        with open("rodeo.err.log", "w") as f:
            f.write("\n".join(lines) + "\n")
    except OSError:
        pass

    try:
        logging.critical(
            f"{exc_value}\nTraceback:\n"
            f'{"".join(traceback.format_tb(exc_traceback))}'
        )
        raise exc_value
    finally:
        # break the frame <-> traceback reference cycle
        del exc_value, exc_traceback


class RodeoException(Exception):
    pass


class WrongInput(RodeoException):
    pass


class DimensionsIncompatible(RodeoException):
    pass


class DesignFormatError(RodeoException):
    """
    Raised when design text cannot be parsed or an entry is not -1/+1.
    Column is 1-based. Row is the 1-based line of parsed text, or the run when
    validating an array.
    """

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class CapacityError(RodeoException):
    pass


class DegeneratePrior(RodeoException):
    pass


class SymmetryViolation(RodeoException):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class AllInestimable(RodeoException):
    pass


class ReproductionMismatch(RodeoException):
    pass
