try:
    from ._core import *  # noqa: F401,F403
    from . import _core  # noqa: F401
except ImportError:  # built outside the package, e.g. straight from cmake
    from _core import *  # noqa: F401,F403
    import _core  # noqa: F401

__all__ = [name for name in dir(_core) if not name.startswith("_")]
