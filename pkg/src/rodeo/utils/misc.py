"""
Miscellaneous utilities: version strings, checksums, internal assertions.
"""
import hashlib
import logging
import os.path
import subprocess

logger = logging.getLogger(__name__)


def ensure(cond, error_message=None):
    """
    Internal consistency check that survives `python -O`.

    :param cond: Condition that must hold.
    :param error_message: Message of the AssertionError raised otherwise.
    """
    if not cond:
        raise AssertionError(error_message)


def _git_revision(path):
    """
    `git describe` of the checkout holding `path`, or 'src' outside git.
    """
    try:
        out = subprocess.check_output(
            ["git", "describe", "--tags", "--always", "--dirty"],
            stderr=subprocess.STDOUT,
            cwd=path,
        )
    except (FileNotFoundError, subprocess.CalledProcessError):
        return "src"
    return out.decode("utf-8").strip()


def get_full_version():
    """
    Package version, suffixed with .<rev> when running from a source folder.
    Never raises.

    :return: '<maj>.<min>.<bld>' for installed packages, '<maj>.<min>.<bld>.<rev>'
        from a source folder, where <rev> is a git description, 'src' outside git,
        or 'x' when the lookup failed.
    """
    import rodeo

    version = rodeo.__version__
    try:
        path = rodeo.__path__[0]
        if not os.path.isdir(path):
            return version
        return f"{version}.{_git_revision(path)}"
    except Exception:  # noqa: E722
        return f"{version}.x"


def sha256sum(filename, chunk_size=1 << 17):
    """
    Hex sha256 digest of a file, read in chunks.
    """
    h = hashlib.sha256()
    with open(filename, "rb") as f:
        for chunk in iter(lambda: f.read(chunk_size), b""):
            h.update(chunk)
    return h.hexdigest()
