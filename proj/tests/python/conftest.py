import os
import sys

# When running against a plain CMake build tree, the extension sits next to
# the other build products instead of inside an installed package.
build_dir = os.environ.get("EULERFAN_BUILD_DIR")
if build_dir:
    sys.path.insert(0, build_dir)
