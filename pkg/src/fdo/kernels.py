"""Backend selection for the hot loops.

The compiled extension is used when it was built and ``FDO_PURE_PYTHON`` is
unset or ``0``; otherwise the NumPy twin is loaded. ``BACKEND`` names the
active choice.
"""

import os

if os.environ.get("FDO_PURE_PYTHON", "0") not in ("", "0"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

pace_vector = _impl.pace_vector
move = _impl.move
sphere = _impl.sphere
rastrigin = _impl.rastrigin
rosenbrock = _impl.rosenbrock
ackley = _impl.ackley

SCALED_RANDOM = 0
TOWARD_BEST = 1
AWAY_FROM_BEST = 2
