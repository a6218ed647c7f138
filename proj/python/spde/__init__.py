"""Python interface to the modified Euler scheme toolkit.

The heavy lifting lives in the compiled extension ``_spde``; this package
re-exports its public names. Installed builds place the extension inside the
package; development builds put it on sys.path directly.
"""

try:
    from ._spde import *  # noqa: F401,F403
    from ._spde import __version__  # noqa: F401
except ImportError:  # extension on sys.path (CMake build tree)
    from _spde import *  # noqa: F401,F403
    from _spde import __version__  # noqa: F401
