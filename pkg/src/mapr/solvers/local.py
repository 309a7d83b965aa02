"""Swap-neighbourhood local search and its additive approximation bounds."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from mapr.errors import DomainError, ParameterError, UnsupportedParameterError
from mapr.model import Instance, LossKind, make_committee
from mapr.solvers.report import SolveReport
from mapr.solvers.scoring import Scorer

_BLOCK_ELEMENTS = 4_000_000


def _combo_array(items, size):
    flat = np.fromiter(itertools.chain.from_iterable(itertools.combinations(items, size)), dtype=np.intp)
    return flat.reshape(-1, size)


def first_improving_swap(scorer: Scorer, committee, counts, current, radius: int):
    """Scan swaps of size 1..radius in canonical order; return the first strict improvement.

    Canonical order: swap size ascending, then the outgoing subset of the
    committee (lexicographic), then the incoming subset of non-members.
    Blocks are evaluated with numpy but the answer is the one a sequential
    scan would give.  Returns ``(move, examined)`` where ``move`` is
    ``(out, in, scaled_loss)`` or None.
    """
    members = set(committee)
    rest = [c for c in range(scorer.instance.db.m) if c not in members]
    examined = 0
    for size in range(1, min(radius, len(committee), len(rest)) + 1):
        outs = _combo_array(committee, size)
        ins = _combo_array(rest, size)
        out_d = scorer.indicators[outs].sum(axis=1)
        in_d = scorer.indicators[ins].sum(axis=1)
        n_in = len(ins)
        per_out = max(1, _BLOCK_ELEMENTS // (n_in * scorer.P))
        in_step = max(1, _BLOCK_ELEMENTS // scorer.P)
        for lo in range(0, len(outs), per_out):
            hi = min(lo + per_out, len(outs))
            if n_in <= in_step:
                new = counts - out_d[lo:hi, None, :] + in_d[None, :, :]
                better = (scorer.scaled(new) < current).ravel()
                if better.any():
                    h = int(np.argmax(better))
                    o, i = lo + h // n_in, h % n_in
                    return (tuple(outs[o].tolist()), tuple(ins[i].tolist()),
                            scorer.scaled(new[o - lo, i])), examined + h + 1
                examined += better.size
                continue
            for o in range(lo, hi):
                for s in range(0, n_in, in_step):
                    new = counts - out_d[o] + in_d[s:s + in_step]
                    better = scorer.scaled(new) < current
                    if better.any():
                        h = int(np.argmax(better))
                        return (tuple(outs[o].tolist()), tuple(ins[s + h].tolist()),
                                scorer.scaled(new[h])), examined + h + 1
                    examined += better.size
    return None, examined


def local_search(instance: Instance, kind, l: int = 1, seed: int = 0,
                 initial=None, max_iter: int | None = None) -> SolveReport:
    """Swap up to ``l`` members for non-members while the loss strictly drops.

    Starts from ``initial`` or from ``k`` candidates drawn without replacement
    with ``numpy.random.default_rng(seed)``.  Each accepted swap is the first
    strict improvement in canonical order, so runs are deterministic.
    """
    if l < 1:
        raise ParameterError("swap radius l must be at least 1")
    kind = LossKind.parse(kind)
    db, k = instance.db, instance.k
    if initial is None:
        rng = np.random.default_rng(seed)
        committee = tuple(sorted(int(x) for x in rng.choice(db.m, size=k, replace=False)))
    else:
        committee = make_committee(db, initial)
        if len(committee) != k:
            raise ParameterError(f"initial committee has {len(committee)} members, expected {k}")
    scorer = Scorer(instance, kind)
    counts = scorer.counts(committee)
    current = scorer.scaled(counts)
    start = committee
    accepted = []
    examined_total = 0
    truncated = False
    while True:
        move, examined = first_improving_swap(scorer, committee, counts, current, l)
        examined_total += examined
        if move is None:
            break
        if max_iter is not None and len(accepted) >= max_iter:
            truncated = True
            break
        out, inn, value = move
        committee = tuple(sorted((set(committee) - set(out)) | set(inn)))
        counts = counts - scorer.indicators[list(out)].sum(axis=0) + scorer.indicators[list(inn)].sum(axis=0)
        current = value
        accepted.append({"out": list(out), "in": list(inn), "loss": scorer.fraction(value)})
    trace = {
        "initial": list(start),
        "iterations": len(accepted),
        "swaps_examined": examined_total,
        "accepted": accepted,
        "radius": l,
    }
    return SolveReport((committee,), scorer.fraction(current), "local", kind,
                       trace=trace, seed=None if initial is not None else seed, truncated=truncated)


def approximation_bound(l: int, num_attributes: int, k: int):
    """Additive guarantee of local search on binary natural instances under L1.

    ``l=1`` gives ``|X|`` (exact rational); ``l=2`` gives
    ``ln(k/2) / (2 ln(k/2) - 1) * (|X| + 6|X|/k)`` as a float.
    """
    if l == 1:
        return Fraction(num_attributes)
    if l != 2:
        raise UnsupportedParameterError(f"no approximation bound known for l={l}")
    if k < 1:
        raise DomainError("k must be positive")
    half = math.log(k / 2)
    denom = 2 * half - 1
    if half <= 0 or denom <= 0:
        raise DomainError(f"bound for l=2 is undefined at k={k} (needs k >= 4)")
    return half / denom * (num_attributes + 6 * num_attributes / k)
