"""Exact Hankel-determinant transforms, weighted Dyck paths and closed walks."""

from .dyck import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
from .hankel import *  # noqa: F401,F403
from .lgv import *  # noqa: F401,F403
from .verify import *  # noqa: F401,F403
from .walks import *  # noqa: F401,F403

__version__ = "0.1.0"
