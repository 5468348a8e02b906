"""Circuit-evaluation kernels, compiled when available.

The backend is chosen once at import. Set ``MAGICVQE_KERNEL=python`` to
force the numpy fallback or ``MAGICVQE_KERNEL=compiled`` to fail loudly when
the extension is missing.
"""

import os

from . import _pykernel

_requested = os.environ.get("MAGICVQE_KERNEL", "auto").lower()
if _requested not in ("auto", "compiled", "python"):
    raise ImportError(f"MAGICVQE_KERNEL must be auto, compiled or python, not {_requested!r}")

_compiled = None
if _requested != "python":
    try:
        from . import _ckernel as _compiled
    except ImportError:
        if _requested == "compiled":
            raise

if _compiled is not None:
    _impl = _compiled
    BACKEND = "compiled"
else:
    _impl = _pykernel
    BACKEND = "python"

evolve = _impl.evolve
pauli_expectation = _impl.pauli_expectation
term_grid = _impl.term_grid
cost_gradient = _impl.cost_gradient


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    out = {"python": _pykernel}
    if _compiled is not None:
        out["compiled"] = _compiled
    else:
        try:
            from . import _ckernel
        except ImportError:
            pass
        else:
            out["compiled"] = _ckernel
    return out
