"""Seeded randomized property suites over the verifiers.

Every suite is fully determined by (suite id, seed, count): instances are
drawn from a random.Random stream, evaluated through the exact verifiers, and
reported sorted by context hash so reports are byte-stable.  The corrupt flag
perturbs one side of every comparison before judging it; it exists so the
harness can prove to itself that a failing instance is actually reported.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .curves import is_semistable
from .funcfield import fraction_str
from .isogenies import (
    SubgroupSpec,
    chain_bookkeeping,
    frobenius_step,
    inverse_frobenius_step,
    velu_step,
    subgroup_intersection,
    subgroup_order,
    subgroup_sum,
)
from .products import ProductAV
from .sampling import sample_semistable_curve, sample_torsion_curve
from .verdicts import (
    Verdict,
    context_hash,
    verify_Hd,
    verify_Hm,
    verify_main_bounds,
    verify_parallelogram,
)

SUITES = ("biseparable", "frobenius", "parallelogram", "bounds")

_PRIMES = (5, 7, 11, 13)


@dataclass(frozen=True)
class SweepInstance:
    context: dict
    holds: bool
    lhs: str
    rhs: str

    def to_json_dict(self) -> dict:
        return {
            "context": self.context,
            "holds": self.holds,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass(frozen=True)
class SweepReport:
    suite: str
    seed: int
    count: int
    corrupted: bool
    instances: tuple[SweepInstance, ...]

    @property
    def n_hold(self) -> int:
        return sum(1 for inst in self.instances if inst.holds)

    @property
    def all_hold(self) -> bool:
        return self.n_hold == self.count

    def failing(self) -> list[SweepInstance]:
        return [inst for inst in self.instances if not inst.holds]

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "count": self.count,
            "corrupted": self.corrupted,
            "n_hold": self.n_hold,
            "all_hold": self.all_hold,
            "instances": [inst.to_json_dict() for inst in self.instances],
        }


def _record(verdict: Verdict, corrupt: bool) -> SweepInstance:
    holds = verdict.holds
    rhs = verdict.rhs
    if corrupt:
        # harness self-test: shift the expected side so the comparison must fail
        rhs = tuple(v + 1 for v in rhs) if isinstance(rhs, tuple) else rhs + 1
        holds = False
    lhs_str = (
        "[" + ",".join(fraction_str(v) for v in verdict.lhs) + "]"
        if isinstance(verdict.lhs, tuple)
        else fraction_str(verdict.lhs)
    )
    rhs_str = (
        "[" + ",".join(fraction_str(v) for v in rhs) + "]"
        if isinstance(rhs, tuple)
        else fraction_str(rhs)
    )
    return SweepInstance(context=verdict.context, holds=holds, lhs=lhs_str, rhs=rhs_str)


def _finish(suite: str, seed: int, count: int, corrupt: bool,
            instances: list[SweepInstance]) -> SweepReport:
    instances.sort(key=lambda inst: context_hash(inst.context))
    return SweepReport(suite, seed, count, corrupt, tuple(instances))


def sweep_biseparable(seed: int, count: int, corrupt: bool = False) -> SweepReport:
    """ell-isogenies (ell coprime to p) preserve h_mod; and h_diff when semi-stable."""
    rng = random.Random(seed)
    instances = []
    for index in range(count):
        ell = rng.choice((2, 3, 5, 7))
        p = rng.choice([q for q in _PRIMES if q != ell])
        E, P = sample_torsion_curve(rng, p, ell)
        chain = chain_bookkeeping([velu_step(E, P)])
        verdict = verify_Hm(E, chain)
        semistable = is_semistable(E)
        if semistable and verdict.holds:
            verdict_hd = verify_Hd(E, chain)
            verdict = Verdict(
                statement="biseparable",
                lhs=verdict.lhs + verdict_hd.lhs,
                rhs=verdict.rhs + verdict_hd.rhs,
                holds=verdict.holds and verdict_hd.holds,
                is_equality=True,
                context=verdict.context,
            )
        verdict.context.update(index=index, ell=ell, semistable=semistable)
        instances.append(_record(verdict, corrupt))
    return _finish("biseparable", seed, count, corrupt, instances)


def sweep_frobenius(seed: int, count: int, corrupt: bool = False) -> SweepReport:
    """Frobenius multiplies both heights of a semi-stable curve by exactly p."""
    rng = random.Random(seed)
    instances = []
    for index in range(count):
        p = rng.choice(_PRIMES)
        E = sample_semistable_curve(rng, p)
        chain = chain_bookkeeping([frobenius_step(E)])
        vd = verify_Hd(E, chain)
        vm = verify_Hm(E, chain)
        verdict = Verdict(
            statement="frobenius_scaling",
            lhs=(vd.lhs, vm.lhs),
            rhs=(vd.rhs, vm.rhs),
            holds=vd.holds and vm.holds,
            is_equality=True,
            context=vd.context,
        )
        verdict.context.update(index=index)
        instances.append(_record(verdict, corrupt))
    return _finish("frobenius", seed, count, corrupt, instances)


def sweep_parallelogram(seed: int, count: int, corrupt: bool = False) -> SweepReport:
    """Coprime-order subgroup pairs give parallelogram equality, and the
    subgroup lattice satisfies |G+H| * |G cap H| = |G| * |H|."""
    rng = random.Random(seed)
    instances = []
    for index in range(count):
        p = rng.choice(_PRIMES)
        E, P = sample_torsion_curve(rng, p, 6)
        G = SubgroupSpec(E, 0, (2 * P,))
        if rng.random() < 0.5:
            G = SubgroupSpec(E, 1, (2 * P,))  # ker Fr + <2P>, order 3p
        H = SubgroupSpec(E, 0, (3 * P,))
        verdict = verify_parallelogram(E, G, H)
        lattice_ok = (
            subgroup_order(subgroup_sum(G, H))
            * subgroup_order(subgroup_intersection(G, H))
            == subgroup_order(G) * subgroup_order(H)
        )
        verdict = Verdict(
            statement="parallelogram_equality",
            lhs=verdict.lhs,
            rhs=verdict.rhs,
            holds=verdict.holds and verdict.is_equality and lattice_ok,
            is_equality=verdict.is_equality,
            context=verdict.context,
        )
        verdict.context.update(index=index, lattice_law=lattice_ok)
        instances.append(_record(verdict, corrupt))
    return _finish("parallelogram", seed, count, corrupt, instances)


def _random_factor_chain(rng: random.Random, p: int):
    """A semi-stable factor with a chain mixing a Velu step and twist steps.

    The Velu step (if any) comes first, while the curve is still small; the
    following Frobenius/inverse-Frobenius tail is padded with enough leading
    Frobenius steps that every inverse twist lands on an actual p-th power.
    """
    ell = rng.choice((2, 3))
    E0, P0 = sample_torsion_curve(rng, p, ell, require_semistable=True)
    lead_velu = rng.random() < 0.5
    tail = [rng.choice("FV") for _ in range(rng.randrange(0, 4))]
    level = 0
    min_level = 0
    for token in tail:
        level += 1 if token == "F" else -1
        min_level = min(min_level, level)
    tokens = (["L"] if lead_velu else []) + ["F"] * max(0, -min_level) + tail
    steps = []
    cursor = E0
    for token in tokens:
        if token == "L":
            step = velu_step(cursor, P0)
        elif token == "F":
            step = frobenius_step(cursor)
        else:
            step = inverse_frobenius_step(cursor)
        steps.append(step)
        cursor = step.target
    return E0, chain_bookkeeping(steps, source=E0), tokens


def sweep_bounds(seed: int, count: int, corrupt: bool = False) -> SweepReport:
    """Factorwise chains on semi-stable ordinary products stay within
    [p^-delta_dual, p^delta] times the source height."""
    rng = random.Random(seed)
    instances = []
    for index in range(count):
        p = rng.choice((5, 7))
        g = rng.randrange(1, 4)
        factors = []
        chains = []
        shapes = []
        for _ in range(g):
            base, chain, tokens = _random_factor_chain(rng, p)
            factors.append(base)
            chains.append(chain)
            shapes.append("".join(tokens))
        verdict = verify_main_bounds(ProductAV(tuple(factors)), chains)
        verdict.context.update(index=index, shapes=shapes)
        instances.append(_record(verdict, corrupt))
    return _finish("bounds", seed, count, corrupt, instances)


def run_sweep(suite: str, seed: int, count: int, corrupt: bool = False) -> SweepReport:
    runners = {
        "biseparable": sweep_biseparable,
        "frobenius": sweep_frobenius,
        "parallelogram": sweep_parallelogram,
        "bounds": sweep_bounds,
    }
    if suite not in runners:
        raise ValueError(f"unknown sweep suite {suite!r}; choose from {SUITES}")
    return runners[suite](seed, count, corrupt)
