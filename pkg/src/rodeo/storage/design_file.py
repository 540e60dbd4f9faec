import logging
import os

from rodeo.design import parse_design

logger = logging.getLogger(__name__)


class DesignFile:
    """
    A design text file: optional '#' comment lines, then one run per row with
    entries -1/+1 separated by commas or whitespace.
    """

    def __init__(self, path, label=None):
        self.path = path
        self.label = label or os.path.splitext(os.path.basename(path))[0]
        self._design = None

    def __repr__(self):
        return f"DesignFile at {self.path}"

    @property
    def design(self):
        if self._design is None:
            logger.info(f"Parsing design file at path {self.path}")
            with open(self.path, "r", encoding="utf8") as f:
                self._design = parse_design(f.read(), label=self.label)
            logger.debug(f"Created <{self._design}>")
        return self._design

    @staticmethod
    def save(d, f, delimiter=","):
        """
        Write a design to an open text stream.
        """
        if d.label:
            f.write(f"# {d.label}\n")
        for row in d.entries:
            f.write(delimiter.join(str(int(v)) for v in row) + "\n")


def read_design(path, label=None):
    return DesignFile(path, label=label).design


def save_design(d, path, delimiter=","):
    with open(path, "w", encoding="utf8") as f:
        DesignFile.save(d, f, delimiter=delimiter)
    logger.info(f"Saved {d} to {path}")
