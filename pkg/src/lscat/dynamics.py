"""Discrete gradient-like systems and the min-max machinery.

A flow on a finite T0 space is necessarily trivial, so the dynamics are a
single order-preserving step map ``phi`` homotopic to the identity, with a
Lyapunov function ``F`` that strictly drops along every non-fixed point.
Invariance of an index function under the flow is replaced by forward
semi-invariance ``nu(A) <= nu(phi(A))``; every "for small eps" becomes
"strictly between adjacent values of F", realised at the midpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .category import CAT_INDEX, IndexFunction, cat_rel, cat_space, cat_value
from .errors import CriticalityViolation, LSError, NotDeformation, NotLyapunov
from .homotopy import DEFAULT_BUDGET, Fence, homotopic_to_identity
from .space import FiniteSpace, MonotoneMap, PointSet, bits, is_connected

ADAPTATION_NOTE = (
    "time-1 discretisation: phi is a continuous step map homotopic to the identity; "
    "flow invariance of nu is replaced by semi-invariance nu(A) <= nu(phi(A)); "
    "'exists t' becomes 'exists n <= |range(F)|'; eps is the midpoint of the "
    "adjacent-value gap of F")


@dataclass(frozen=True)
class GradientLikeSystem:
    space: FiniteSpace
    step: MonotoneMap
    lyapunov: tuple[Fraction, ...]
    identity_certificate: Fence = field(repr=False)
    notice: str | None = field(default=None, compare=False)

    def F(self, i: int) -> Fraction:
        return self.lyapunov[i]

    @property
    def levels(self) -> list[Fraction]:
        """Sorted distinct values of F."""
        return sorted(set(self.lyapunov))

    def lyapunov_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.space.points, self.lyapunov))


def _as_step(space: FiniteSpace, step) -> MonotoneMap:
    if isinstance(step, MonotoneMap):
        if step.source != space or step.target != space:
            raise ValueError("step must be a self-map of the space")
        return step
    if isinstance(step, Mapping):
        return MonotoneMap.from_dict(space, space, step)
    return MonotoneMap(space, space, step)


def _as_values(space: FiniteSpace, lyapunov) -> tuple[Fraction, ...]:
    if isinstance(lyapunov, Mapping):
        missing = [p for p in space.points if p not in lyapunov]
        if missing:
            raise NotLyapunov(f"F undefined on {missing}", missing[0])
        return tuple(Fraction(lyapunov[p]) for p in space.points)
    values = tuple(Fraction(v) for v in lyapunov)
    if len(values) != len(space):
        raise NotLyapunov("F must be defined on every point")
    return values


def validate_system(space: FiniteSpace, step, lyapunov,
                    budget: int = DEFAULT_BUDGET) -> GradientLikeSystem:
    """Check continuity, deformation and strict descent; attach a fence to id.

    ``step`` is a :class:`MonotoneMap`, an id->id mapping or an index
    sequence; ``lyapunov`` an id->value mapping or a value sequence.
    """
    phi = _as_step(space, step)
    fence = homotopic_to_identity(phi, budget)
    if fence is None:
        raise NotDeformation("step map is not homotopic to the identity")
    F = _as_values(space, lyapunov)
    for x, y in enumerate(phi.assignment):
        if x != y and not F[y] < F[x]:
            raise NotLyapunov(f"F does not drop along {space.points[x]} -> "
                              f"{space.points[y]} ({F[x]} -> {F[y]})", space.points[x])
    horizon = len(set(F))
    for x in range(len(space)):
        y = x
        for _ in range(horizon):
            y = phi.assignment[y]
        if phi.assignment[y] != y:
            raise LSError(f"orbit of {space.points[x]} did not stabilise in {horizon} steps")
    return GradientLikeSystem(space, phi, F, fence)


# -- basic dynamics ----------------------------------------------------------

def rest_points(sys: GradientLikeSystem) -> PointSet:
    return PointSet(sys.space, sys.step.fixed_points())


def sublevel_mask(sys: GradientLikeSystem, c) -> int:
    c = Fraction(c)
    out = 0
    for i, v in enumerate(sys.lyapunov):
        if v <= c:
            out |= 1 << i
    return out


def sublevel(sys: GradientLikeSystem, c) -> PointSet:
    """``F^c = F^{-1}(-inf, c]``."""
    return PointSet(sys.space, sublevel_mask(sys, c))


def evolve_mask(sys: GradientLikeSystem, mask: int, n: int) -> int:
    for _ in range(n):
        nxt = sys.step.image(mask)
        if nxt == mask:
            break
        mask = nxt
    return mask


def evolve(sys: GradientLikeSystem, A: PointSet, n: int) -> PointSet:
    """Set image ``phi^n(A)``."""
    return PointSet(sys.space, evolve_mask(sys, A.members, n))


def terminal(sys: GradientLikeSystem, x: int) -> tuple[int, int]:
    """(rest point the orbit of ``x`` ends at, number of steps to reach it)."""
    steps = 0
    while sys.step.assignment[x] != x:
        x = sys.step.assignment[x]
        steps += 1
    return x, steps


@dataclass(frozen=True)
class CriticalData:
    rest_points: PointSet
    critical_values: tuple[Fraction, ...]
    level_sets: tuple[PointSet, ...]


def critical_data(sys: GradientLikeSystem) -> CriticalData:
    S = sys.step.fixed_points()
    values = tuple(sorted({sys.lyapunov[i] for i in bits(S)}))
    levels = []
    for a in values:
        m = 0
        for i in bits(S):
            if sys.lyapunov[i] == a:
                m |= 1 << i
        levels.append(PointSet(sys.space, m))
    return CriticalData(PointSet(sys.space, S), values, tuple(levels))


def _below(levels: Sequence[Fraction], c: Fraction) -> Fraction:
    """A value strictly between ``c`` and the next lower level (c - eps)."""
    lower = [v for v in levels if v < c]
    return (lower[-1] + c) / 2 if lower else c - 1


def _above(levels: Sequence[Fraction], c: Fraction) -> Fraction:
    upper = [v for v in levels if v > c]
    return (upper[0] + c) / 2 if upper else c + 1


# -- min-max spectrum --------------------------------------------------------

@dataclass(frozen=True)
class Block:
    value: Fraction
    first: int  # k of the first c_k in the run
    multiplicity: int  # r + 1
    level_set: PointSet


@dataclass(frozen=True)
class MinMaxSpectrum:
    nu_X: int
    values: tuple[Fraction, ...]
    blocks: tuple[Block, ...]

    def to_json(self) -> dict:
        return {"nu_X": self.nu_X, "values": [str(v) for v in self.values],
                "blocks": [{"value": str(b.value), "first": b.first,
                            "multiplicity": b.multiplicity, "level_set": b.level_set.ids()}
                           for b in self.blocks]}


def minmax_spectrum(sys: GradientLikeSystem, nu: IndexFunction = CAT_INDEX) -> MinMaxSpectrum:
    """``c_k`` = least level ``c`` with ``nu(F^c) >= k``, for ``k = 1..nu(X)``.

    Also confirms ``nu(F^{c_k - eps}) < k`` and that every ``c_k`` is a
    critical value, raising :class:`CriticalityViolation` otherwise.
    """
    X = sys.space
    levels = sys.levels
    nu_X = nu.of_mask(X, X.full)
    nu_at = [nu.of_mask(X, sublevel_mask(sys, c)) for c in levels]
    crit = set(critical_data(sys).critical_values)
    values: list[Fraction] = []
    for k in range(1, nu_X + 1):
        c = next((lv for lv, v in zip(levels, nu_at) if v >= k), None)
        if c is None:
            raise LSError(f"no sublevel set reaches nu >= {k} although nu(X) = {nu_X}")
        if nu.of_mask(X, sublevel_mask(sys, _below(levels, c))) >= k:
            raise LSError(f"nu(F^(c_{k} - eps)) >= {k}: sublevel values are not monotone")
        if c not in crit:
            raise CriticalityViolation(f"c_{k} = {c} is not a critical value of F")
        values.append(c)
    blocks = []
    k = 0
    while k < len(values):
        run = k
        while run + 1 < len(values) and values[run + 1] == values[k]:
            run += 1
        c = values[k]
        level = PointSet(X, sys.step.fixed_points() & sublevel_mask(sys, c)
                         & ~sublevel_mask(sys, _below(levels, c)))
        blocks.append(Block(c, k + 1, run - k + 1, level))
        k = run + 1
    return MinMaxSpectrum(nu_X, tuple(values), tuple(blocks))


# -- theorem verification ----------------------------------------------------

@dataclass(frozen=True)
class BlockCheck:
    """Multiplicity check for one run ``c_k = ... = c_{k+r}`` of equal values.

    ``escaping`` are the points of ``F^{c+eps}`` whose orbit ends below
    ``c``; ``absorbed`` those whose orbit ends in ``S ∩ F^{-1}(c)``.
    """

    value: Fraction
    first: int
    multiplicity: int
    nu_level: int
    inequality_holds: bool
    partition_holds: bool
    nu_escaping: int
    nu_neighbourhood: int
    nu_sublevel_above: int
    literal_image_holds: bool

    @property
    def passed(self) -> bool:
        return self.inequality_holds and self.partition_holds


@dataclass(frozen=True)
class TheoremReport:
    index: str
    critical_values: tuple[Fraction, ...]
    per_level: tuple[int, ...]
    sum: int
    nu_X: int
    theorem_holds: bool
    spectrum: MinMaxSpectrum
    criticality_holds: bool
    block_checks: tuple[BlockCheck, ...]
    rest_point_count: int
    normalization_count_holds: bool | None
    moreover_probe: dict
    level_sum_probe: dict
    connected_count_probe: dict
    reeken_probe: dict
    adaptation: str = ADAPTATION_NOTE

    @property
    def m(self) -> int:
        return len(self.critical_values)

    @property
    def blocks_hold(self) -> bool:
        return all(c.passed for c in self.block_checks)

    def to_json(self) -> dict:
        return {
            "adaptation": self.adaptation,
            "index": self.index,
            "critical_values": [str(a) for a in self.critical_values],
            "per_level": list(self.per_level),
            "sum": self.sum,
            "nu_X": self.nu_X,
            "theorem_holds": self.theorem_holds,
            "spectrum": self.spectrum.to_json(),
            "criticality_holds": self.criticality_holds,
            "blocks_hold": self.blocks_hold,
            "block_checks": [
                {"value": str(c.value), "first": c.first, "multiplicity": c.multiplicity,
                 "nu_level": c.nu_level, "inequality_holds": c.inequality_holds,
                 "partition_holds": c.partition_holds, "nu_escaping": c.nu_escaping,
                 "nu_neighbourhood": c.nu_neighbourhood,
                 "nu_sublevel_above": c.nu_sublevel_above,
                 "literal_image_holds": c.literal_image_holds}
                for c in self.block_checks],
            "rest_points": self.rest_point_count,
            "normalization_count_holds": self.normalization_count_holds,
            "m": self.m,
            "moreover_probe": self.moreover_probe,
            "level_sum_probe": self.level_sum_probe,
            "connected_count_probe": self.connected_count_probe,
            "reeken_probe": self.reeken_probe,
        }


def _neighbourhood(X: FiniteSpace, mask: int, nu: IndexFunction) -> int:
    # an open set around the level set with the same index value
    if nu is CAT_INDEX:
        _, cover = cat_rel(X, PointSet(X, mask))
        out = 0
        for U in cover.sets:
            out |= U.members
        return out
    return X.down_closure(mask)


def _block_check(sys: GradientLikeSystem, nu: IndexFunction, block: Block) -> BlockCheck:
    X = sys.space
    levels = sys.levels
    horizon = len(levels)
    c = block.value
    A = block.level_set.members
    U = _neighbourhood(X, A, nu)
    upper = sublevel_mask(sys, _above(levels, c))
    lower = sublevel_mask(sys, _below(levels, c))
    escaping = absorbed = 0
    for x in bits(upper):
        y = evolve_mask(sys, 1 << x, horizon)
        if y & lower:
            escaping |= 1 << x
        if y & A:
            absorbed |= 1 << x
    partition = (not upper & ~(escaping | absorbed)
                 and not evolve_mask(sys, absorbed, horizon) & ~U)
    literal = not evolve_mask(sys, upper & ~U, horizon) & ~lower
    nu_level = nu.of_mask(X, A)
    return BlockCheck(
        value=c, first=block.first, multiplicity=block.multiplicity, nu_level=nu_level,
        inequality_holds=nu_level >= block.multiplicity, partition_holds=bool(partition),
        nu_escaping=nu.of_mask(X, escaping), nu_neighbourhood=nu.of_mask(X, U),
        nu_sublevel_above=nu.of_mask(X, upper), literal_image_holds=bool(literal))


def verify_theorem(sys: GradientLikeSystem, nu: IndexFunction = CAT_INDEX) -> TheoremReport:
    X = sys.space
    data = critical_data(sys)
    per_level = tuple(nu(X, L) for L in data.level_sets)
    total = sum(per_level)
    spectrum = minmax_spectrum(sys, nu)
    nu_X = spectrum.nu_X
    crit = set(data.critical_values)
    S = data.rest_points
    checks = tuple(_block_check(sys, nu, b) for b in spectrum.blocks)

    normalization = None
    if "normalization" in nu.declared_axioms:
        normalization = len(S) >= nu_X

    m = len(data.critical_values)
    cat_levels = [cat_value(X, L.members) for L in data.level_sets]
    cat_X = cat_space(X)
    level_sum = {"sum_cat": sum(cat_levels), "cat_X": cat_X, "holds": sum(cat_levels) >= cat_X}

    applicable = is_connected(X) and all(v == 1 for v in per_level)
    connected = {"applicable": applicable, "m": m, "nu_X": nu_X,
            "holds": (m >= nu_X) if applicable else None}

    intrinsic = cat_space(X.subspace(S.members))
    reeken = {"cat_S": intrinsic, "cat_X_of_S": cat_value(X, S.members), "cat_X": cat_X,
              "holds": intrinsic >= cat_X}

    return TheoremReport(
        index=nu.name, critical_values=data.critical_values, per_level=per_level,
        sum=total, nu_X=nu_X, theorem_holds=total >= nu_X, spectrum=spectrum,
        criticality_holds=all(c in crit for c in spectrum.values), block_checks=checks,
        rest_point_count=len(S), normalization_count_holds=normalization,
        moreover_probe={"m": m, "nu_X": nu_X, "holds": m >= nu_X},
        level_sum_probe=level_sum, connected_count_probe=connected, reeken_probe=reeken)
