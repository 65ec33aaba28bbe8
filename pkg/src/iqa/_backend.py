"""Kernel backend selection.

The compiled Cython kernel is used when its extension module imported
successfully; otherwise the pure-numpy twin takes over.  The environment
variable IQA_BACKEND forces the choice ("cython", "python", or "auto").
"""

from __future__ import annotations

import os

from . import _flow_py

try:
    from . import _flow_cy
except ImportError:  # extension not built on this platform
    _flow_cy = None

_MODULES = {"python": _flow_py}
if _flow_cy is not None:
    _MODULES["cython"] = _flow_cy


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_MODULES))


def get_backend(name: str | None = None):
    """Resolve a kernel module by name; None/'auto' picks the fastest available."""
    if name is None:
        name = os.environ.get("IQA_BACKEND", "auto")
    if name == "auto":
        name = "cython" if "cython" in _MODULES else "python"
    try:
        return _MODULES[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}") from None


def backend_info() -> dict:
    selected = get_backend()
    return {"selected": selected.BACKEND_NAME, "available": available_backends()}
