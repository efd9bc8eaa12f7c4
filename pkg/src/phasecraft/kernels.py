"""Backend selection for the measurement kernels.

Prefers the compiled extension; falls back to the numpy implementation.
Set PHASECRAFT_BACKEND=python (or =cython) to force a choice.
"""

from __future__ import annotations

import os

_forced = os.environ.get("PHASECRAFT_BACKEND", "").lower()

if _forced == "python":
    from . import _kernels_py as _impl
elif _forced == "cython":
    from . import _fastkernels as _impl  # raises if the extension is missing
else:
    try:
        from . import _fastkernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND_NAME = _impl.BACKEND_NAME
parity_curve = _impl.parity_curve
fi_curve = _impl.fi_curve
loss_background_weights = _impl.loss_background_weights
