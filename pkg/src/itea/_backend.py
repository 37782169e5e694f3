"""Kernel backend selection.

The compiled ``itea._kernels`` extension is used when it imports; otherwise,
or when ``ITEA_BACKEND=python`` is set, the numpy fallback is used.
"""

import contextlib
import os

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _fallback}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

if os.environ.get("ITEA_BACKEND", "").lower() == "python" or _compiled is None:
    kernels = _fallback
else:
    kernels = _compiled


def name() -> str:
    return "compiled" if kernels is _compiled and _compiled is not None else "python"


@contextlib.contextmanager
def use(backend: str):
    """Temporarily switch the active kernels (used by tests and benchmarks)."""
    global kernels
    if backend not in BACKENDS:
        raise ValueError(f"backend {backend!r} unavailable; have {sorted(BACKENDS)}")
    previous = kernels
    kernels = BACKENDS[backend]
    try:
        yield
    finally:
        kernels = previous
