"""Python bindings for the vigil toolkit."""

try:
    from ._vigil import *  # noqa: F401,F403
    from ._vigil import __doc__  # noqa: F401
except ImportError:  # build tree: the extension sits next to, not inside, the package
    from _vigil import *  # type: ignore # noqa: F401,F403

__version__ = "0.1.0"
