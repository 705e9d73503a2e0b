"""Kernel backend selection.

The compiled extension is preferred; set ``NNETEN_FORCE_PYTHON=1`` to force
the numpy fallback (used by the backend-comparison benchmark and tests).
"""

import os

if os.environ.get("NNETEN_FORCE_PYTHON") == "1":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

BACKEND = kernels.BACKEND
train_epochs = kernels.train_epochs
template_match_counts = kernels.template_match_counts
sample_entropy_counts = kernels.sample_entropy_counts
