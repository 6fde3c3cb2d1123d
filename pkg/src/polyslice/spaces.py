"""Polyhedral norm spaces: builders, evaluators, and face queries.

A space is a finite symmetric generator set Phi spanning the dual, with
|||x||| = max over Phi of phi.x.  Two concrete families are provided:

* kind "II": dimension N+1 with coordinates x(1..N) then a trailing scalar
  beta; the norm is max(sup-norm of x plus |beta|, (1+r)|beta|), realized by
  the 4N+2 generators {(0,..,0,+-(1+r))} and {xi e_n +- e_beta}.
* kind "VII": dimension N with a distinguished first coordinate and, for each
  n >= 2, the ten generators +-e_n, +-e_1 +- (1/3) e_n, +-w_n e_1 +- (1/2) e_n
  with weights w_n in (5/6, 1].

The unit ball of a space and the extreme points of its generator set are
cached per space value, so repeated queries share one vertex enumeration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .numeric import ONE, ZERO, Matrix, Scalar, Vec, rank, rational, rational_str
from .polytope import HalfSpace, HPolytope, VPolytope, extreme_points

__all__ = [
    "PolyhedralNormSpace",
    "FaceSet",
    "norm",
    "make_space_II",
    "make_space_VII",
    "default_omega",
    "reference_product_norm",
    "unit_ball",
    "dual_ball_vertices",
    "attaining_set",
    "space_to_dict",
    "space_from_dict",
    "save_space",
    "load_space",
]


@dataclass(frozen=True)
class PolyhedralNormSpace:
    """Immutable space description: dimension, generators, label, parameters.

    Generators must be symmetric (closed under negation) and span the dual,
    so the induced gauge is a genuine norm and the unit ball is bounded.
    """

    dim: int
    generators: tuple
    label: str
    params: tuple = ()

    def __post_init__(self):
        gens = tuple(g if isinstance(g, Vec) else Vec(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        for g in gens:
            if len(g) != self.dim:
                raise ValueError("generator of length %d in dimension %d" % (len(g), self.dim))
            if g.is_zero():
                raise ValueError("zero generator")
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generators")
        gen_set = set(gens)
        for g in gens:
            if -g not in gen_set:
                raise ValueError("generator set is not symmetric: missing %r" % (-g,))
        if rank(Matrix(gens)) != self.dim:
            raise ValueError("generators do not span the dual; the gauge is not a norm")

    def param(self, name):
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    def has_param(self, name):
        return any(key == name for key, _ in self.params)


@dataclass(frozen=True)
class FaceSet:
    """A point together with the extreme dual generators attaining its norm."""

    point: Vec
    attaining: tuple


def norm(space: PolyhedralNormSpace, x) -> Scalar:
    """Evaluate |||x||| = max over generators of phi.x (exact)."""
    x = x if isinstance(x, Vec) else Vec(x)
    if len(x) != space.dim:
        raise ValueError("point of length %d in dimension %d" % (len(x), space.dim))
    return max(g.dot(x) for g in space.generators)


def make_space_II(N: int, r) -> PolyhedralNormSpace:
    """Lifted sup-norm space on R^(N+1), beta coordinate last.

    The 4N+2 generators are (0,..,0,+-(1+r)) and xi e_n +- e_beta for
    n <= N, xi in {+-1}; the induced norm is
    max(||x||_inf + |beta|, (1+r)|beta|).
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    r = rational(r)
    if r <= 0:
        raise ValueError("r must be positive")
    d = N + 1
    gens = []
    for sign in (1, -1):
        v = [ZERO] * d
        v[N] = sign * (1 + r)
        gens.append(Vec(v))
    for n in range(N):
        for xi in (1, -1):
            for psi in (1, -1):
                v = [ZERO] * d
                v[n] = Scalar(xi)
                v[N] = Scalar(psi)
                gens.append(Vec(v))
    gens.sort()
    return PolyhedralNormSpace(d, tuple(gens), "II", (("N", N), ("r", r)))


def default_omega(N: int) -> tuple:
    """Default weight rule w_n = 1 - 1/(6n) for n = 2..N: rational, strictly
    inside (5/6, 1], increasing to 1."""
    return tuple(Scalar(6 * n - 1) / (6 * n) for n in range(2, N + 1))


def make_space_VII(N: int, omega=None) -> PolyhedralNormSpace:
    """Weighted three-family space on R^N (first coordinate distinguished).

    omega supplies the weights w_2..w_N; each must lie in (5/6, 1].  The
    default rule is w_n = 1 - 1/(6n).  The generator count is 10(N-1).
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    if omega is None:
        omega = default_omega(N)
    omega = tuple(rational(w) for w in omega)
    if len(omega) != N - 1:
        raise ValueError("expected %d weights, got %d" % (N - 1, len(omega)))
    five_sixths = Scalar(5) / 6
    for w in omega:
        if not (five_sixths < w <= 1):
            raise ValueError("weight %s outside (5/6, 1]" % (w,))
    third = ONE / 3
    half = ONE / 2
    gens = []
    for idx, n in enumerate(range(2, N + 1)):
        w = omega[idx]
        j = n - 1
        for s in (1, -1):
            v = [ZERO] * N
            v[j] = Scalar(s)
            gens.append(Vec(v))
        for s1 in (1, -1):
            for s2 in (1, -1):
                v = [ZERO] * N
                v[0] = Scalar(s1)
                v[j] = s2 * third
                gens.append(Vec(v))
        for s1 in (1, -1):
            for s2 in (1, -1):
                v = [ZERO] * N
                v[0] = s1 * w
                v[j] = s2 * half
                gens.append(Vec(v))
    gens.sort()
    return PolyhedralNormSpace(N, tuple(gens), "VII", (("N", N), ("omega", omega)))


def reference_product_norm(x, split: int) -> Scalar:
    """The 1-sum of the sup norm and a scalar part: max_n |x(n)| + |x(split)|,
    the max running over every coordinate except the split one."""
    x = x if isinstance(x, Vec) else Vec(x)
    if not 0 <= split < len(x):
        raise IndexError("split %d outside dimension %d" % (split, len(x)))
    rest = [abs(c) for i, c in enumerate(x) if i != split]
    return (max(rest) if rest else ZERO) + abs(x[split])


_BALL_CACHE: dict = {}
_DUAL_CACHE: dict = {}


def unit_ball(space: PolyhedralNormSpace) -> HPolytope:
    """H-polytope {x : phi.x <= 1 for every generator phi}.

    The same object is returned for equal spaces, so downstream vertex
    enumeration is shared.
    """
    cached = _BALL_CACHE.get(space)
    if cached is None:
        cached = HPolytope([HalfSpace(g, ONE) for g in space.generators], space.dim)
        _BALL_CACHE[space] = cached
    return cached


def dual_ball_vertices(space: PolyhedralNormSpace) -> VPolytope:
    """Extreme points of the generator set (the dual unit ball's vertices).

    For the built-in constructions nothing is dropped; the reduction is still
    performed so the claim is checked rather than assumed.
    """
    cached = _DUAL_CACHE.get(space)
    if cached is None:
        cached = extreme_points(space.generators)
        _DUAL_CACHE[space] = cached
    return cached


def attaining_set(space: PolyhedralNormSpace, x) -> FaceSet:
    """Extreme dual generators phi with phi.x = |||x||| (x must be nonzero)."""
    x = x if isinstance(x, Vec) else Vec(x)
    if x.is_zero():
        raise ValueError("attaining set of the zero vector is the whole dual ball")
    value = norm(space, x)
    att = tuple(g for g in dual_ball_vertices(space).vertices if g.dot(x) == value)
    return FaceSet(point=x, attaining=att)


def space_to_dict(space: PolyhedralNormSpace) -> dict:
    data = {"kind": space.label if space.label in ("II", "VII") else "custom"}
    if space.has_param("N"):
        data["N"] = space.param("N")
    if space.has_param("r"):
        data["r"] = rational_str(space.param("r"))
    if space.has_param("omega"):
        data["omega"] = [rational_str(w) for w in space.param("omega")]
    data["generators"] = [[rational_str(c) for c in g] for g in space.generators]
    return data


def space_from_dict(data: dict) -> PolyhedralNormSpace:
    kind = data.get("kind", "custom")
    if kind == "II":
        return make_space_II(int(data["N"]), rational(data["r"]))
    if kind == "VII":
        omega = data.get("omega")
        if omega is not None:
            omega = [rational(w) for w in omega]
        return make_space_VII(int(data["N"]), omega)
    if kind != "custom":
        raise ValueError("unknown space kind %r" % (kind,))
    gens = [Vec(g) for g in data["generators"]]
    if not gens:
        raise ValueError("custom space needs generators")
    params = []
    if "N" in data:
        params.append(("N", int(data["N"])))
    if "r" in data:
        params.append(("r", rational(data["r"])))
    return PolyhedralNormSpace(len(gens[0]), tuple(sorted(gens)), "custom", tuple(params))


def save_space(space: PolyhedralNormSpace, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(space_to_dict(space), fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_space(path) -> PolyhedralNormSpace:
    with open(path, "r", encoding="utf-8") as fh:
        return space_from_dict(json.load(fh))
