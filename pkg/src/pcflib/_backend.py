"""Kernel backend selection.

The compiled Cython core is preferred when its extension module built;
otherwise the pure-Python twin takes over.  ``MASSPCF_BACKEND=python``
forces the fallback (useful for the backend-parity tests and the
benchmark); ``MASSPCF_BACKEND=compiled`` fails loudly if the extension
is missing instead of silently degrading.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _sweepkern
except ImportError:  # pragma: no cover - depends on the build
    _sweepkern = None

OP_LP = _kernels_py.OP_LP
OP_INNER = _kernels_py.OP_INNER


class _Backend:
    def __init__(self, name, impl, packed_is_arrays):
        self.name = name
        self._impl = impl
        self._packed_is_arrays = packed_is_arrays

    def integrate_pair(self, f, g, a, b, op, p):
        if self._packed_is_arrays:
            return self._impl.integrate_pair(
                f.times, f.values, g.times, g.values, a, b, op, p
            )
        ft, fv = f.as_lists()
        gt, gv = g.as_lists()
        return self._impl.integrate_pair(ft, fv, gt, gv, a, b, op, p)

    def pack(self, collection):
        return self._impl.pack(collection)

    def fill_block(self, packed, r0, r1, op, p, apply_root, diag, a, b, out):
        return self._impl.fill_block(
            packed, r0, r1, op, p, apply_root, diag, a, b, out
        )

    def __repr__(self):
        return f"<kernel backend: {self.name}>"


_COMPILED = _Backend("compiled", _sweepkern, True) if _sweepkern else None
_PYTHON = _Backend("python", _kernels_py, False)


def _initial():
    choice = os.environ.get("MASSPCF_BACKEND", "").strip().lower()
    if choice == "python":
        return _PYTHON
    if choice == "compiled":
        if _COMPILED is None:
            raise ImportError(
                "MASSPCF_BACKEND=compiled but the compiled core is not built"
            )
        return _COMPILED
    return _COMPILED if _COMPILED is not None else _PYTHON


_active = _initial()


def get_backend() -> _Backend:
    return _active


def set_backend(name: str) -> _Backend:
    """Switch kernels at runtime ('compiled' or 'python'); returns it."""
    global _active
    if name == "python":
        _active = _PYTHON
    elif name == "compiled":
        if _COMPILED is None:
            raise ImportError("the compiled core is not built")
        _active = _COMPILED
    else:
        raise ValueError(f"unknown backend {name!r}")
    return _active


def available_backends():
    return ["compiled", "python"] if _COMPILED is not None else ["python"]
