"""How good is the two-measurement closed form for X-state discord?

The closed form only compares measurements along z and in the xy plane.
This script scans random X states against a full measurement search and
prints the states where an oblique measurement does better.
"""
import math

import numpy as np

from lmg_discord import XState
from lmg_discord.correlations import discord_candidates
from lmg_discord.oracle import discord_bruteforce

rng = np.random.default_rng(2)


def random_xstate():
    a, c, two_b = rng.dirichlet([1.0, 1.0, 1.0])
    b = two_b / 2
    z = rng.uniform() * math.sqrt(a * c) * np.exp(2j * math.pi * rng.uniform())
    return XState(a, b, c, rng.uniform(-1, 1) * b, z)


gaps = []
for _ in range(300):
    s = random_xstate()
    closed = min(discord_candidates(s))
    best, _, angles = discord_bruteforce(s, full=True)
    gaps.append(closed - best)
    if closed - best > 1e-9:
        print(f"a={s.a:.3f} b={s.b:.3f} c={s.c:.3f} |y|={abs(s.y):.3f} |z|={abs(s.z):.3f}"
              f"  closed={closed:.6f}  search={best:.6f}  theta={angles.theta:.3f}")

gaps = np.array(gaps)
print(f"\n{len(gaps)} states; closed form exact (gap < 1e-9) for {np.sum(gaps < 1e-9)}")
print(f"largest gap {gaps.max():.2e}")
