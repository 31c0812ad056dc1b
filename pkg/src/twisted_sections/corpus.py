"""Seeded random graded modules for property and agreement tests."""

from __future__ import annotations

import random

from .modules import GradedModule, direct_sum
from .rings import QQ, BaseRing, Field, RingContext


def _random_poly(ctx: RingContext, degree: int, rng: random.Random, terms: int) -> dict:
    mons = ctx.monomial_basis(degree)
    out = {}
    for m in rng.sample(mons, min(terms, len(mons))):
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        out[m] = ctx.field(c)
    return out


def random_module(ctx: RingContext, rng: random.Random, max_gens: int = 3, max_gen_deg: int = 2,
                  max_rels: int = 4, max_rel_deg: int = 3) -> GradedModule:
    """A random finitely presented module with homogeneous relations."""
    t = rng.randint(1, max_gens)
    degs = sorted(rng.randint(0, max_gen_deg) for _ in range(t))
    rels = []
    for _ in range(rng.randint(1, max_rels)):
        e = rng.randint(min(degs) + 1, max(max_rel_deg, min(degs) + 1))
        vec = {}
        for k, a in enumerate(degs):
            if a < e and rng.random() < 0.8:
                for m, c in _random_poly(ctx, e - a, rng, rng.randint(1, 2)).items():
                    vec[(k, m)] = c
        if vec:
            rels.append(vec)
    return GradedModule(ctx, degs, rels)


def torsion_module(ctx: RingContext, a: int, degree: int) -> GradedModule:
    """S/m^a with its generator in the given degree."""
    return GradedModule(ctx, [degree], [{(0, m): ctx.field.one} for m in ctx.monomial_basis(a)])


def corpus(size: int = 25, seed: int = 20240611, base: BaseRing | None = None,
           max_n: int = 2) -> list:
    """``size`` random modules over Q with n in {1, ..., max_n}."""
    rng = random.Random(seed)
    base = base or BaseRing(QQ)
    out = []
    for _ in range(size):
        ctx = RingContext(base, rng.randint(1, max_n))
        out.append(random_module(ctx, rng))
    return out


def planted_torsion_pairs(size: int = 5, seed: int = 7) -> list:
    """Pairs (M, M + (S/m^a) placed in degree b), with M from the corpus."""
    rng = random.Random(seed)
    pairs = []
    for M in corpus(size, seed):
        T = torsion_module(M.ctx, rng.randint(1, 2), rng.randint(0, 1))
        pairs.append((M, direct_sum(M, T)))
    return pairs


def prime_field_corpus(size: int = 5, seed: int = 11, p: int = 32003) -> list:
    return corpus(size, seed, BaseRing(Field(p)))
