"""Exact solvers for best-case energy of monotone AND/OR circuits."""

try:
    from ecmin._ecmin import *  # noqa: F401,F403
    from ecmin._ecmin import __doc__  # noqa: F401
except ImportError:  # module built standalone, not installed as a package
    from _ecmin import *  # noqa: F401,F403
    from _ecmin import __doc__  # noqa: F401
