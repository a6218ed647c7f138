import os
import sys

# The CMake build drops the extension in the build tree; the package sources
# live under python/. Both are injected by the ctest environment.
for var in ("SPDE_MODULE_DIR", "SPDE_PY_SRC"):
    path = os.environ.get(var)
    if path and path not in sys.path:
        sys.path.insert(0, path)
