"""Cabling chains, slope propagation, and certified diameter bounds.

A knot is described by a base atom plus an ordered chain of cablings
applied innermost-first: entry i of the chain produces knot i from knot
i-1 (knot 0 being the base), so the last entry is the outermost cable.
The base atom carries declared invariants that this package cannot
compute from first principles — its finite set of strict numerical
boundary slopes under a declared framing, and boolean flags
(meridionally small; round, i.e. the exterior is a solid torus; itself
a cable; cyclic ambient fundamental group) — plus, for a round base,
the complementary meridian that pins down the ambient manifold.

The pipeline then derives what does follow exactly:

  * a chain over a round base is a generalized iterated torus knot,
    and its ambient manifold's H1 is computable from the gluing data;
  * a declared strict slope set propagates outward level by level
    through each cable space's affine transfer map (values stay
    finite: the meridian value is excluded at the base and the maps
    fix INF);
  * the slope-set diameter scales by exactly q^2 per level, so two
    routes certify a lower bound d_lower on the outermost diameter:
    the small-base axiom route (a meridionally small, non-round,
    non-cable base with cyclic ambient fundamental group has diameter
    at least 2, giving 2 * prod q_i^2) and the declared-set route
    (prod q_i^2 times the declared set's diameter).  The reported
    d_lower is the largest certified bound, NEG_INF when no route
    applies, and absent for generalized iterated torus knots (no
    numeric claim is made for those).

Certificates carry rule tags: "A" for each q^2 scaling step, "B-axiom"
for the small-base bound, "B-ii" for the generalized-iterated-torus-
knot branch; the dichotomy check (rule "C": outermost diameter at
least 2*q^2 unless the knot is a generalized iterated torus knot) is
check_corollary_c().
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cablespace import STANDARD_OUTER_FRAMING, cable_space_homology, glued_manifold_h1
from .report import Check, CheckReport
from .slopes import INF, Framing, Slope
from .transfer import transfer_certificate


class _NegInfinity:
    """The diameter of an empty slope set.  A unique atom, no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"


NEG_INF = _NegInfinity()


def diameter(values):
    """Exact diameter (max - min) of a finite set of rationals; empty -> NEG_INF."""
    vals = list(values)
    if any(v is INF for v in vals):
        raise ValueError("diameter is undefined when the meridian value is present")
    if not vals:
        return NEG_INF
    vals = [Fraction(v) for v in vals]
    return max(vals) - min(vals)


def _normalized_values(values):
    """Declared slope values as a frozenset of Fractions and possibly INF."""
    out = set()
    for v in values:
        out.add(v if v is INF else Fraction(v))
    return frozenset(out)


def _sorted_values(values):
    """Deterministic ordering: finite values ascending, INF last."""
    finite = sorted(v for v in values if v is not INF)
    return tuple(finite) + ((INF,) if any(v is INF for v in values) else ())


@dataclass(frozen=True)
class AtomKnot:
    """A base knot's declared invariants.

    ``strict_numerical_slopes`` is the (possibly empty) finite set of
    strict numerical boundary slopes under the declared framing.  The
    flags are trusted inputs; only their mutual consistency is checked:
    a meridionally small knot cannot list INF among its boundary
    slopes, and a round knot has no strict surfaces at all, so its set
    must be empty and it must instead supply the complementary meridian
    (in reference coordinates) that determines the ambient manifold.
    """

    strict_numerical_slopes: frozenset = frozenset()
    meridionally_small: bool = False
    is_round: bool = False
    is_cable: bool = False
    ambient_pi1_cyclic: bool = False
    complementary_meridian: Slope = None

    def __post_init__(self):
        object.__setattr__(
            self,
            "strict_numerical_slopes",
            _normalized_values(self.strict_numerical_slopes),
        )
        if self.meridionally_small and INF in self.strict_numerical_slopes:
            raise ValueError(
                "meridian slope declared as a boundary slope of a meridionally small knot"
            )
        if self.is_round and self.strict_numerical_slopes:
            raise ValueError("a round knot has no strict boundary slopes")
        if self.is_round and self.complementary_meridian is None:
            raise ValueError("a round base requires its complementary meridian")
        if not self.is_round and self.complementary_meridian is not None:
            raise ValueError("complementary meridian is gluing data of a round base only")


@dataclass(frozen=True)
class Cabling:
    """One cabling level: q strands, homology winding p, optional overrides."""

    p: int
    q: int
    orientation: int = 1
    f_outer: Framing = None
    f_inner: Framing = None

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise ValueError("p and q must be integers")
        if self.q < 2:
            raise ValueError("not a cabling (q must be at least 2)")
        if gcd(self.p, self.q) != 1:
            raise ValueError("cabling curve not simple")

    def model(self):
        return cable_space_homology(
            self.p, self.q, self.f_outer, self.f_inner, self.orientation
        )


@dataclass(frozen=True)
class KnotDescription:
    """A base atom plus cablings applied innermost-first."""

    base: AtomKnot
    cablings: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self,
            "cablings",
            tuple(
                c if isinstance(c, Cabling) else Cabling(*c) for c in self.cablings
            ),
        )


def recognize_gitk(d):
    """A chain of cablings over a round base, of any length (even zero)."""
    return d.base.is_round


def ambient_h1(d):
    """H1 of the ambient manifold, or None when not determinable.

    Cablings happen inside a solid torus, so they never change the
    ambient manifold; it is pinned down exactly when the base is round.
    """
    if not d.base.is_round:
        return None
    return glued_manifold_h1(STANDARD_OUTER_FRAMING, d.base.complementary_meridian)


def propagate(d):
    """Per-level strict slope value sets, base first.

    Entry 0 is the declared base set; entry i+1 is the image of entry i
    under level i's transfer map.  Requires a meridionally small base
    (which also guarantees every declared and propagated value is
    finite).  Returns a list of sorted tuples of Fractions.
    """
    if not d.base.meridionally_small:
        raise ValueError("propagation requires a meridionally small base")
    levels = [tuple(sorted(d.base.strict_numerical_slopes))]
    for cabling in d.cablings:
        smap = transfer_certificate(cabling.model()).map
        levels.append(tuple(sorted(smap.apply(v) for v in levels[-1])))
    return levels


@dataclass(frozen=True)
class LevelRecord:
    """One cabling level inside a DiameterCertificate.

    ``slopes`` is the propagated value set after this level, or None
    when propagation was not licensed (base not meridionally small).
    """

    cabling: Cabling
    certificate: object  # TransferCertificate
    slopes: tuple = None


@dataclass(frozen=True)
class DiameterCertificate:
    """A certified lower bound on the outermost strict slope diameter.

    ``routes`` maps each certified route name to its exact bound;
    ``primary_route`` names the route backing ``d_lower`` ("gitk",
    "axiom-b", "declared-set", or "none").  ``d_lower`` is a Fraction,
    NEG_INF when no route applies, or None on the gitk route (no
    numeric claim).  ``tags`` lists (rule, value) pairs: one "A" per
    scaling step, "B-axiom" for the small-base bound, "B-ii" for the
    generalized-iterated-torus-knot branch.
    """

    description: KnotDescription
    gitk: bool
    ambient: object  # FPAbelianGroup or None
    base_slopes: tuple
    levels: tuple
    routes: dict
    primary_route: str
    d_lower: object
    reason: str = ""
    tags: tuple = ()


def diameter_lower_bound(d):
    """Evaluate every certified route for d and assemble the certificate."""
    base = d.base
    gitk = recognize_gitk(d)
    ambient = ambient_h1(d)
    if ambient is not None and base.ambient_pi1_cyclic and not ambient.is_cyclic:
        raise ValueError(
            "ambient fundamental group declared cyclic, but the computed ambient H1 is not"
        )

    certs = [transfer_certificate(c.model()) for c in d.cablings]
    level_sets = propagate(d) if base.meridionally_small else None
    levels = tuple(
        LevelRecord(
            cabling=c,
            certificate=cert,
            slopes=None if level_sets is None else level_sets[i + 1],
        )
        for i, (c, cert) in enumerate(zip(d.cablings, certs))
    )
    base_slopes = _sorted_values(base.strict_numerical_slopes)

    scale = 1
    for c in d.cablings:
        scale *= c.q * c.q

    routes = {}
    tags = []
    reason = ""
    if gitk:
        primary = "gitk"
        d_lower = None
        tags.append(("B-ii", None))
    else:
        if (
            base.meridionally_small
            and not base.is_round
            and not base.is_cable
            and base.ambient_pi1_cyclic
        ):
            routes["axiom-b"] = Fraction(2) * scale
            tags.append(("B-axiom", Fraction(2)))
        if base.meridionally_small and base.strict_numerical_slopes:
            base_diam = diameter(base.strict_numerical_slopes)
            routes["declared-set"] = scale * base_diam
            # Exact consistency with the actual propagated sets.
            assert level_sets is not None
            assert diameter(level_sets[-1]) == scale * base_diam
        if routes:
            for c in d.cablings:
                tags.append(("A", Fraction(c.q * c.q)))
            d_lower = max(routes.values())
            primary = (
                "axiom-b" if routes.get("axiom-b") == d_lower else "declared-set"
            )
        else:
            d_lower = NEG_INF
            primary = "none"
            if not base.meridionally_small:
                reason = "no certified route: the base is not declared meridionally small"
            else:
                reason = (
                    "no certified route: the strict slope set is empty and the "
                    "small-base axiom's hypotheses are not all declared"
                )

    return DiameterCertificate(
        description=d,
        gitk=gitk,
        ambient=ambient,
        base_slopes=base_slopes,
        levels=levels,
        routes=routes,
        primary_route=primary,
        d_lower=d_lower,
        reason=reason,
        tags=tuple(tags),
    )


def check_corollary_c(d):
    """The outermost-cable dichotomy: d_lower >= 2*q^2, or the knot is
    a generalized iterated torus knot (rule "C").

    Requires a description with at least one cabling whose base
    declares meridional smallness and cyclic ambient fundamental group;
    returns a CheckReport whose "dichotomy" entry fails only on inputs
    that certify neither branch (a logic error in the inputs, since the
    hypotheses were declared).
    """
    if not d.cablings:
        raise ValueError("not a cable description")
    if not (d.base.meridionally_small and d.base.ambient_pi1_cyclic):
        raise ValueError(
            "not a cable description (requires declared meridional smallness "
            "and cyclic ambient fundamental group)"
        )
    cert = diameter_lower_bound(d)
    q = d.cablings[-1].q
    threshold = Fraction(2 * q * q)
    checks = [Check("cable-description", True, "outermost strand count q = %d" % q)]
    if cert.gitk:
        checks.append(
            Check(
                "dichotomy",
                True,
                "branch (ii): generalized iterated torus knot",
            )
        )
    elif cert.d_lower is not NEG_INF and cert.d_lower >= threshold:
        checks.append(
            Check(
                "dichotomy",
                True,
                "branch (i): certified d_lower = %s >= 2*q^2 = %s"
                % (cert.d_lower, threshold),
            )
        )
    else:
        got = "-inf" if cert.d_lower is NEG_INF else str(cert.d_lower)
        checks.append(
            Check(
                "dichotomy",
                False,
                "logic error in inputs: neither branch certified "
                "(certified d_lower = %s < 2*q^2 = %s and the base is not round)"
                % (got, threshold),
            )
        )
    return CheckReport(checks=tuple(checks))
