"""Numeric kernels with a compiled fast path.

The Cython extension ``shrinkcut._kernels._ext`` is used when it imported
successfully at build time; otherwise the pure-numpy implementations in
``shrinkcut._kernels.pure`` take over.  Set ``SHRINKCUT_PURE=1`` to force the
fallback (used by the benchmark and the equivalence tests).

Both backends expose the same functions with identical semantics:

    cost_diagonal, phase_apply, mixer_apply, expectation, zz_all,
    gray_maxcut, local_search, sdp_sweep, sdp_objective
"""

from __future__ import annotations

import os

from . import pure

if os.environ.get("SHRINKCUT_PURE", "").strip() not in ("", "0"):
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _ext as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = pure
        BACKEND = "pure"

cost_diagonal = _impl.cost_diagonal
phase_apply = _impl.phase_apply
mixer_apply = _impl.mixer_apply
expectation = _impl.expectation
zz_all = _impl.zz_all
gray_maxcut = _impl.gray_maxcut
local_search = _impl.local_search
sdp_sweep = _impl.sdp_sweep
sdp_objective = _impl.sdp_objective
