from __future__ import annotations

import os
import tempfile


def pytest_configure(config):
    # Keep test runs hermetic unless a cache directory is supplied explicitly.
    if "MACLAB_CACHE" not in os.environ:
        os.environ["MACLAB_CACHE"] = tempfile.mkdtemp(prefix="maclab-cache-")
