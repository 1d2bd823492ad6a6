# -*- coding: utf-8 -*-
"""
This script evaluates E_{2alpha,2}(-lambda) along a lambda grid and shows
which evaluation branch is used at each point, together with the f and g
parts of the decomposition once lambda is past the series threshold.
"""
import numpy as np

from app.config import load_settings
from app.services.decomposition import DecompositionContext, DecompositionService

settings = load_settings()
alpha = 0.9
ctx = DecompositionContext.from_settings(alpha, settings)

print(f"alpha={alpha}, series threshold lambda={ctx.series_threshold:.4g}")
for lam in np.linspace(1.0, 200.0, 12):
    value, branch = DecompositionService.char_fn_with_branch(ctx, lam)
    line = f"lambda={lam:8.3f}  E={value: .6e}  ({branch})"
    if branch == "decomposition":
        f = DecompositionService.f_part(ctx, lam)
        g = DecompositionService.g_part(ctx, lam)
        line += f"  f={f:.4e}  g={g: .4e}"
    print(line)
