"""Named and seeded-random spaces and gradient-like systems."""

from __future__ import annotations

import random
from fractions import Fraction

from .cohomology import order_complex
from .dynamics import GradientLikeSystem, validate_system
from .space import FiniteSpace, MonotoneMap, beat_points, bits, build_space, from_order


def point() -> FiniteSpace:
    return build_space([], ["p"])


def chain(n: int) -> FiniteSpace:
    if n < 1:
        raise ValueError("chain needs n >= 1")
    ids = [f"x{i}" for i in range(n)]
    return build_space(zip(ids, ids[1:]), ids)


def antichain(n: int) -> FiniteSpace:
    if n < 1:
        raise ValueError("antichain needs n >= 1")
    return build_space([], [f"p{i}" for i in range(n)])


def pseudocircle() -> FiniteSpace:
    """P4: two minima a, b below two maxima c, d."""
    return build_space([("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def min_sphere(n: int) -> FiniteSpace:
    """Minimal finite model of S^n: n+1 layers of two points, each below the next layer."""
    if n < 0:
        raise ValueError("sphere dimension must be >= 0")
    layers = [(f"a{k}", f"b{k}") for k in range(n + 1)]
    covers = [(lo, hi) for k in range(n) for lo in layers[k] for hi in layers[k + 1]]
    return build_space(covers, [p for layer in layers for p in layer])


def lambda_poset() -> FiniteSpace:
    """a < b, a < c."""
    return build_space([("a", "b"), ("a", "c")])


def v_poset() -> FiniteSpace:
    """a < c, b < c."""
    return build_space([("a", "c"), ("b", "c")])


def pseudocircle_wart() -> FiniteSpace:
    """P4 with one extra point w covering c."""
    return build_space([("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "w")])


def subdivision(X: FiniteSpace) -> FiniteSpace:
    """Face poset of the order complex: chains of X ordered by inclusion."""
    K = order_complex(X)
    chains = [frozenset(s) for level in K.simplices for s in level]
    names = {c: "[" + ",".join(K.vertices[v] for v in sorted(c)) + "]" for c in chains}
    return from_order([names[c] for c in chains],
                      _inclusion_order({names[c]: c for c in chains}))


def _inclusion_order(by_name):
    def leq(p, q):
        return by_name[p] < by_name[q]
    return leq


def wart(X: FiniteSpace, count: int, seed: int) -> FiniteSpace:
    """Add ``count`` new points, each covering a random existing point.

    Every new point is a beat point (its strict down-set has a maximum), so
    the core is unchanged.
    """
    rng = random.Random(seed)
    points = list(X.points)
    covers = X.cover_ids()
    taken = set(points)
    k = 0
    for _ in range(count):
        while f"w{k}" in taken:
            k += 1
        w = f"w{k}"
        covers.append((rng.choice(points), w))
        points.append(w)
        taken.add(w)
    return build_space(covers, points)


def random_poset(n: int, edge_prob: float, seed: int) -> FiniteSpace:
    """Random DAG on ``n`` points (edges only go up in index), transitively reduced."""
    rng = random.Random(seed)
    ids = [f"v{i}" for i in range(n)]
    edges = [(ids[i], ids[j]) for i in range(n) for j in range(i + 1, n)
             if rng.random() < edge_prob]
    return build_space(edges, ids)


MODELS = {
    "point": lambda **kw: point(),
    "chain": lambda n, **kw: chain(n),
    "antichain": lambda n, **kw: antichain(n),
    "pseudocircle": lambda **kw: pseudocircle(),
    "min_sphere": lambda n, **kw: min_sphere(n),
    "lambda": lambda **kw: lambda_poset(),
    "v": lambda **kw: v_poset(),
    "random": lambda n, edge_prob, seed, **kw: random_poset(n, edge_prob, seed),
}


def generate_space(model: str, **params) -> FiniteSpace:
    """Dispatch on a model name; ``subdivision`` and ``wart`` take ``space=``."""
    if model == "subdivision":
        return subdivision(params["space"])
    if model == "wart":
        return wart(params["space"], params.get("count", 1), params.get("seed", 0))
    try:
        build = MODELS[model]
    except KeyError:
        raise ValueError(f"unknown model {model!r}") from None
    return build(**params)


def library() -> dict[str, FiniteSpace]:
    """Named spaces used across the test suite."""
    return {
        "point": point(),
        "chain2": chain(2),
        "chain3": chain(3),
        "chain4": chain(4),
        "antichain2": antichain(2),
        "antichain3": antichain(3),
        "antichain4": antichain(4),
        "lambda": lambda_poset(),
        "v": v_poset(),
        "pseudocircle": pseudocircle(),
        "pseudocircle_wart": pseudocircle_wart(),
        "min_sphere2": min_sphere(2),
        "subdivided_pseudocircle": subdivision(pseudocircle()),
    }


def random_warted_space(seed: int, max_points: int = 10) -> FiniteSpace:
    """Random base poset plus at least one wart, at most ``max_points`` in total."""
    rng = random.Random(seed)
    base = rng.randint(2, max(2, max_points - 3))
    prob = rng.choice([0.2, 0.3, 0.4, 0.5, 0.6])
    X = random_poset(base, prob, rng.randrange(1 << 30))
    warts = rng.randint(1, max_points - base)
    return wart(X, warts, rng.randrange(1 << 30))


# -- systems -----------------------------------------------------------------

def _elementary(space: FiniteSpace, x: int, y: int) -> tuple[int, ...]:
    return tuple(y if i == x else i for i in range(len(space)))


def _orbits(assignment) -> list[tuple[int, int]] | None:
    """(terminal rest point, steps) per point, or None if some orbit cycles."""
    n = len(assignment)
    out = []
    for x in range(n):
        y, steps = x, 0
        while assignment[y] != y:
            y = assignment[y]
            steps += 1
            if steps > n:
                return None
        out.append((y, steps))
    return out


def generate_system(X: FiniteSpace, seed: int, level_spread: int = 2,
                    attempts: int = 20) -> GradientLikeSystem:
    """Seeded gradient-like system on ``X``.

    The step map composes a random sequence of elementary beat-point
    retractions of ``X`` (each pointwise comparable to the identity).  F is
    ``K * steps_to_rest + g(rest point)`` with ``g`` random in
    ``[0, level_spread)`` and ``K = level_spread + 1``.  Without beat points
    (X is a core) the identity system is returned with a notice.
    """
    if level_spread < 1:
        raise ValueError("level_spread must be >= 1")
    rng = random.Random(seed)
    n = len(X)
    beats = beat_points(X)
    notice = None
    if not beats:
        assignment = tuple(range(n))
        notice = ("no beat points: the space is its own core, so the only step map "
                  "homotopic to the identity is the identity")
    else:
        assignment = None
        for _ in range(attempts):
            current = tuple(range(n))
            for _ in range(rng.randint(1, 2 * len(beats))):
                x, y = rng.choice(beats)
                r = _elementary(X, x, y)
                current = tuple(r[v] for v in current)
            if _orbits(current) is not None:
                assignment = current
                break
        if assignment is None:
            x, y = beats[0]
            assignment = _elementary(X, x, y)
    orbits = _orbits(assignment)
    K = level_spread + 1
    g = {x: rng.randrange(level_spread) for x in range(n) if assignment[x] == x}
    F = [Fraction(K * steps + g[rest]) for rest, steps in orbits]
    sys = validate_system(X, MonotoneMap(X, X, assignment), F)
    if notice:
        sys = GradientLikeSystem(sys.space, sys.step, sys.lyapunov,
                                 sys.identity_certificate, notice)
    return sys


def random_monotone_map(X: FiniteSpace, seed: int) -> MonotoneMap:
    """Uniformly-chosen values under the monotonicity constraint (not uniform over maps)."""
    rng = random.Random(seed)
    out = [0] * len(X)

    def rec(pos: int) -> bool:
        if pos == len(X):
            return True
        a = X.topo[pos]
        allowed = X.full
        for b in X.lower_covers[a]:
            allowed &= X.above[out[b]]
        choices = list(bits(allowed))
        rng.shuffle(choices)
        for v in choices:
            out[a] = v
            if rec(pos + 1):
                return True
        return False

    rec(0)  # constant maps always exist, so this succeeds
    return MonotoneMap(X, X, out)
