from .misc import ensure, get_full_version, sha256sum  # isort:skip
from .random import Random, spawn_seeds
