"""Pick the compiled kernels when built, else the numpy fallback.

Set ``TWISTCODE_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

NAME = "python"
kernels = _kernels_py

if os.environ.get("TWISTCODE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        kernels = _compiled
        NAME = "compiled"

rref_modp = kernels.rref_modp
rank_modp = kernels.rank_modp
projective_weights = kernels.projective_weights
