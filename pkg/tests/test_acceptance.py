"""Acceptance checklist: the package's headline guarantees, end to end.

One test per guarantee.  Every comparison is exact Fraction or Val
arithmetic with no tolerances anywhere, and each test prints its own
PASS/FAIL line so a verbose run reads as a checklist.  The whole file
is budgeted to finish well under a minute.
"""

import math
import random
from fractions import Fraction

from berkline import (
    ONE,
    ZERO,
    And,
    Atom,
    Monomial,
    NotCollapsible,
    Or,
    PAdicField,
    Polynomial,
    TAdicField,
    TropicalPolyhedron,
    Val,
    collapse,
    concatenate,
    contract,
    convex_hull,
    disc,
    divisor,
    gauss_eval,
    gauss_point,
    geodesic,
    immersion_check,
    infinity,
    invert,
    is_def_compact,
    join,
    local_constancy,
    newton_breakpoints,
    point_leq,
    rational_eval,
    retract,
    simple_point,
    skeleton_preimage,
    tree_distance,
)
from berkline.tropical import SkeletonPreimage
from conftest import rand_fraction, sampled_slope_changes


def report(capsys, name, failures):
    ok = not failures
    with capsys.disabled():
        print(f"acceptance {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"{len(failures)} failures, first: {failures[0]!r}"


def rand_disc(field, rng, height=50):
    radius = Val.of(Fraction(rng.randint(-8, 8), rng.randint(1, 4)))
    return disc(field, rand_fraction(rng, height), radius)


def rand_point(field, rng, height=50):
    roll = rng.random()
    if roll < 0.08:
        return infinity(field)
    if roll < 0.25:
        return simple_point(field, rand_fraction(rng, height))
    return rand_disc(field, rng, height)


def rand_time(rng):
    if rng.random() < 0.1:
        return ZERO
    return Val.of(Fraction(rng.randint(0, 10), rng.randint(1, 3)))


def poly_from_roots(field, roots):
    out = Polynomial.from_coeffs(field, [Fraction(1)])
    for r in roots:
        out = out * Polynomial.from_coeffs(field, [-r, Fraction(1)])
    return out


def test_valuation_laws(capsys):
    rng = random.Random(101)
    q3 = PAdicField(3)
    qt = TAdicField()

    def rand_ratfunc():
        num = [rng.randint(-9, 9) for _ in range(rng.randint(1, 3))]
        den = [rng.randint(-9, 9) for _ in range(rng.randint(1, 3))]
        if not any(den):
            den[rng.randrange(len(den))] = 1
        return qt.from_coeffs(num, den)

    failures = []
    for field, draw in ((q3, lambda: rand_fraction(rng)), (qt, rand_ratfunc)):
        for _ in range(10_000):
            x, y = draw(), draw()
            ax, ay = field.abs(x), field.abs(y)
            if field.abs(field.mul(x, y)) != ax * ay:
                failures.append(("multiplicative", field, x, y))
            s = field.abs(field.add(x, y))
            bound = ax if ay < ax else ay
            if not s <= bound:
                failures.append(("ultrametric", field, x, y))
            if ax != ay and s != bound:
                failures.append(("tie-free equality", field, x, y))
    report(capsys, "valuation laws", failures)


def test_gauss_multiplicativity(capsys):
    rng = random.Random(202)
    q3 = PAdicField(3)

    def rand_poly():
        coeffs = [
            Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000))
            for _ in range(rng.randint(1, 7))
        ]
        if not any(coeffs):
            coeffs[-1] = Fraction(1)
        return Polynomial.from_coeffs(q3, coeffs)

    points = []
    for _ in range(100):
        center = Fraction(rng.randint(-30, 30), rng.randint(1, 30))
        if rng.random() < 0.2:
            points.append(simple_point(q3, center))
        else:
            points.append(disc(q3, center, Val.of(Fraction(rng.randint(-6, 6), rng.randint(1, 3)))))

    failures = []
    for i in range(1000):
        p, q = rand_poly(), rand_poly()
        pq = p * q
        # Every pooled point recurs cyclically; the rest of each batch
        # is drawn fresh so all pairs of (pair, point) mix over the run.
        picks = [points[i % 100]] + [points[rng.randrange(100)] for _ in range(9)]
        for x in picks:
            if gauss_eval(x, pq) != gauss_eval(x, p) * gauss_eval(x, q):
                failures.append((x, p, q))
    report(capsys, "gauss multiplicativity", failures)


def test_ball_and_tree_laws(capsys):
    rng = random.Random(303)
    q3 = PAdicField(3)
    failures = []

    # Equality agrees with mutual containment, also on pairs doctored
    # to be the same ball under a shifted center.
    for k in range(2000):
        x = rand_disc(q3, rng)
        if k % 4 == 0:
            shift = Fraction(3) ** math.ceil(x.radius.exponent) * rng.randint(-5, 5)
            y = disc(q3, x.center + shift, x.radius)
        else:
            y = rand_disc(q3, rng)
        if (x == y) != (point_leq(x, y) and point_leq(y, x)):
            failures.append(("equality vs containment", x, y))

    # join is an upper bound and no smaller upper bound exists among
    # candidate comparison points.
    for _ in range(1000):
        x, y = rand_disc(q3, rng), rand_disc(q3, rng)
        j = join(x, y)
        if not (point_leq(x, j) and point_leq(y, j)):
            failures.append(("join upper bound", x, y))
        candidates = [
            j,
            disc(q3, j.center, Val.of(j.radius.exponent - 1)),
            join(j, rand_disc(q3, rng)),
            rand_disc(q3, rng),
        ]
        for z in candidates:
            if point_leq(x, z) and point_leq(y, z) and not point_leq(j, z):
                failures.append(("join least", x, y, z))

    # Four-point condition: the two largest pairings agree.
    for _ in range(10_000):
        a, b, c, d = (rand_disc(q3, rng) for _ in range(4))
        sums = sorted(
            (
                tree_distance(a, b) + tree_distance(c, d),
                tree_distance(a, c) + tree_distance(b, d),
                tree_distance(a, d) + tree_distance(b, c),
            )
        )
        if sums[1] != sums[2]:
            failures.append(("four-point", a, b, c, d))

    # Geodesics hit their endpoints and distances add along them.
    for _ in range(300):
        x, y = rand_point(q3, rng), rand_point(q3, rng)
        path = geodesic(x, y)
        if path.start_point != x or path.end_point != y:
            failures.append(("endpoints", x, y))
        total = tree_distance(x, y)
        for z in path.sample(per_leg=3):
            if tree_distance(x, z) + tree_distance(z, y) != total:
                failures.append(("additivity", x, y, z))
    report(capsys, "ball and tree laws", failures)


def test_retraction_axioms(capsys):
    rng = random.Random(404)
    q3 = PAdicField(3)
    failures = []

    for _ in range(1000):
        gens = [rand_point(q3, rng) for _ in range(rng.randint(1, 8))]
        tree = convex_hull(gens, include_gauss=True)
        x, t = rand_point(q3, rng), rand_time(rng)
        if retract(tree, ZERO, x) != x:
            failures.append(("identity at time zero", gens, x))
        if not tree.contains(retract(tree, ONE, x)):
            failures.append(("end lands on tree", gens, x))
        on_tree = gens[rng.randrange(len(gens))]
        if retract(tree, t, on_tree) != on_tree:
            failures.append(("tree fixed pointwise", gens, t, on_tree))
        if retract(tree, ONE, retract(tree, t, x)) != retract(tree, ONE, x):
            failures.append(("end idempotence", gens, t, x))

    gauss = gauss_point(q3)
    for _ in range(1000):
        x = rand_point(q3, rng)
        if contract(ONE, x) != gauss:
            failures.append(("contraction image", x))
    report(capsys, "retraction axioms", failures)


def test_norm_preservation(capsys):
    rng = random.Random(505)
    q3 = PAdicField(3)
    failures = []

    for _ in range(50):
        n_zeros = rng.randint(1, 3)
        n_poles = rng.randint(1, 3)
        centers = rng.sample(range(-12, 13), n_zeros + n_poles)
        zeros = [Fraction(v) for v in centers[:n_zeros]]
        poles = [Fraction(v) for v in centers[n_zeros:]]
        num = poly_from_roots(q3, zeros)
        den = poly_from_roots(q3, poles)
        support = [simple_point(q3, a) for a in zeros + poles]
        balanced = n_zeros == n_poles
        if not balanced:
            support.append(infinity(q3))
        extras = [rand_disc(q3, rng) for _ in range(rng.randint(0, 2))]
        tree = convex_hull(support + extras, include_gauss=True)

        for _ in range(20):
            x = rand_point(q3, rng)
            while (x.infinite and not balanced) or (
                not x.infinite
                and x.radius.is_zero
                and any(x.center == p for p in poles)
            ):
                x = rand_point(q3, rng)
            t = rand_time(rng)
            y = retract(tree, t, x)
            if rational_eval(y, num, den) != rational_eval(x, num, den):
                failures.append((zeros, poles, t, x))
    report(capsys, "norm preservation under retraction", failures)


def test_newton_equivalence(capsys):
    rng = random.Random(606)
    q3 = PAdicField(3)
    failures = []

    for _ in range(500):
        coeffs = []
        for _ in range(rng.randint(1, 9)):
            if rng.random() < 0.2:
                coeffs.append(Fraction(0))
            elif rng.random() < 0.3:
                coeffs.append(Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000)))
            else:
                coeffs.append(Fraction(rng.randint(-1000, 1000)))
        if not any(coeffs):
            coeffs[0] = Fraction(rng.randint(1, 1000))
        p = Polynomial.from_coeffs(q3, coeffs)
        if newton_breakpoints(p) != sampled_slope_changes(q3, p):
            failures.append(coeffs)
    report(capsys, "newton breakpoints", failures)


def test_skeleton_preimage(capsys):
    rng = random.Random(707)
    q3 = PAdicField(3)
    failures = []

    for _ in range(50):
        n_zeros = rng.randint(1, 3)
        n_poles = rng.randint(1, 3)
        centers = rng.sample(range(-12, 13), n_zeros + n_poles)
        zeros = [
            (simple_point(q3, Fraction(v)), rng.randint(1, 2))
            for v in centers[:n_zeros]
        ]
        poles = [
            (simple_point(q3, Fraction(v)), rng.randint(1, 2))
            for v in centers[n_zeros:]
        ]
        weight = sum(m for _, m in zeros) - sum(m for _, m in poles)
        if weight < 0:
            zeros.append((infinity(q3), -weight))
        elif weight > 0:
            poles.append((infinity(q3), weight))
        div = divisor(q3, zeros, poles)
        skel = skeleton_preimage(zeros, poles)

        # Off the preimage the function has no radius-direction slope.
        for _ in range(12):
            x = rand_disc(q3, rng, height=30)
            if skel.tree.contains(x):
                continue
            if local_constancy(div, x) != 0:
                failures.append(("locally constant off tree", zeros, poles, x))

        # Each recorded edge slope is reproduced by evaluating |f| at
        # three interior radii of the edge, in the edge's own chart.
        num = poly_from_roots(q3, [p.center for p, m in zeros if not p.infinite for _ in range(m)])
        den = poly_from_roots(q3, [p.center for p, m in poles if not p.infinite for _ in range(m)])
        for edge, slope in zip(skel.tree.edges, skel.edge_slopes):
            if edge.lo == edge.hi:
                continue
            if edge.lo.is_zero:
                base = edge.hi.exponent
                xs = [base + 1, base + 2, base + 3]
            else:
                span = edge.lo.exponent - edge.hi.exponent
                xs = [edge.hi.exponent + span * Fraction(k, 4) for k in (1, 2, 3)]
            vals = []
            for xi in xs:
                pt = disc(q3, edge.center, Val.of(xi))
                if edge.flipped:
                    pt = invert(pt)
                vals.append(rational_eval(pt, num, den).exponent)
            if (vals[1] - vals[0]) != slope * (xs[1] - xs[0]) or (
                vals[2] - vals[1]
            ) != slope * (xs[2] - xs[1]):
                failures.append(("edge slope", zeros, poles, edge, slope))

        # Injected slope-zero edges must be flagged.
        if not immersion_check(skel):
            failures.append(("clean preimage flagged", zeros, poles))
        if skel.edge_slopes:
            doctored = SkeletonPreimage(skel.tree, (0,) + skel.edge_slopes[1:])
            if immersion_check(doctored):
                failures.append(("control not flagged", zeros, poles))
    report(capsys, "skeleton preimage", failures)


def test_compactness_classification(capsys):
    x1 = Monomial(ONE, (1,))
    z1 = Monomial(ZERO, (0,))
    x2 = Monomial(ONE, (1, 0))
    y2 = Monomial(ONE, (0, 1))
    xy = Monomial(ONE, (1, 1))
    xx = Monomial(ONE, (2, 0))

    def c1(e):
        return Monomial(Val.of(e), (0,))

    def c2(e):
        return Monomial(Val.of(e), (0, 0))

    def p1(formula):
        return TropicalPolyhedron(1, formula)

    def p2(formula):
        return TropicalPolyhedron(2, formula)

    cases = [
        (p1(Atom(x1, c1(0), "le")), True),  # closed unit ball
        (p1(Atom(x1, c1(0), "ge")), False),  # complement side, unbounded
        (p1(Atom(x1, c1(2), "le")), True),  # smaller ball, zero included
        (p1(Atom(x1, c1(0), "lt")), False),  # open ball misses its rim
        (p1(Atom(x1, c1(0), "gt")), False),  # open and unbounded
        (p1(And((Atom(x1, c1(2), "ge"), Atom(x1, c1(0), "le")))), True),  # closed annulus
        (p1(And((Atom(x1, c1(0), "ge"), Atom(x1, c1(2), "le")))), True),  # empty slice
        (p1(And((Atom(x1, c1(0), "le"), Atom(x1, c1(0), "ge")))), True),  # unit circle
        (p1(And((Atom(x1, c1(0), "le"), Atom(x1, z1, "gt")))), False),  # punctured ball
        (p1(Atom(x1, z1, "le")), True),  # the origin alone
        (p1(And(())), False),  # no constraints at all
        (p1(Or(())), True),  # empty union
        (
            p1(Or((Atom(x1, c1(2), "le"), And((Atom(x1, c1(1), "ge"), Atom(x1, c1(0), "le")))))),
            True,
        ),  # union of ball and annulus
        (p1(Or((Atom(x1, c1(0), "le"), Atom(x1, c1(0), "ge")))), False),  # one arm unbounded
        (
            p1(Or((And((Atom(x1, c1(2), "ge"), Atom(x1, c1(0), "le"))), Atom(x1, c1(3), "lt")))),
            False,
        ),  # strict arm leaves an open gap
        (p2(And((Atom(x2, c2(0), "le"), Atom(y2, c2(0), "le")))), True),  # product of balls
        (p2(Atom(x2, c2(0), "le")), False),  # second coordinate free
        (p2(Atom(xy, c2(0), "le")), False),  # product bound only, a slab
        (
            p2(And((Atom(xy, c2(0), "ge"), Atom(x2, c2(0), "le"), Atom(y2, c2(0), "le")))),
            True,
        ),  # pinched to the corner point
        (
            p2(
                And(
                    (
                        Atom(xx, c2(-2), "le"),
                        Atom(y2, c2(0), "le"),
                        Or((Atom(x2, c2(4), "ge"), Atom(x2, c2(0), "le"))),
                    )
                )
            ),
            True,
        ),  # squared bound plus a union, still a box
    ]
    failures = [
        (i, want) for i, (poly, want) in enumerate(cases) if is_def_compact(poly) != want
    ]
    report(capsys, "compactness classification", failures)


def test_collapse_of_concatenations(capsys):
    rng = random.Random(909)
    failures = []

    def rand_val():
        return Val.of(Fraction(rng.randint(-12, 12), rng.randint(1, 3)))

    for _ in range(100):
        values = [rand_val()]
        for _ in range(rng.randint(1, 5)):
            nxt = rand_val()
            while nxt == values[-1]:
                nxt = rand_val()
            values.append(nxt)
        pieces = list(zip(values, values[1:]))
        seg = concatenate(pieces)
        cm = collapse(seg)

        samples = [(0, values[0])]
        for i, (a, b) in enumerate(pieces):
            for k in (1, 2, 3):
                xi = a.exponent + (b.exponent - a.exponent) * Fraction(k, 4)
                samples.append((i, Val.of(xi)))
        samples.append((len(pieces) - 1, values[-1]))

        images = [cm.forward(i, v) for i, v in samples]
        for (i, v), y in zip(samples, images):
            if not cm.target.contains(y):
                failures.append(("image in target", values, i, v))
            j, w = cm.backward(y)
            if seg.canonical_point(j, w) != seg.canonical_point(i, v):
                failures.append(("round trip", values, i, v))
            if cm.forward(j, w) != y:
                failures.append(("re-forward", values, y))
        diffs = [b.exponent - a.exponent for a, b in zip(images, images[1:])]
        if not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
            failures.append(("monotone", values))

    for _ in range(10):
        values = []
        for _ in range(rng.randint(3, 6)):
            nxt = rand_val()
            while values and nxt == values[-1]:
                nxt = rand_val()
            values.append(nxt)
        values[rng.randrange(len(values))] = ZERO
        pieces = list(zip(values, values[1:]))
        try:
            collapse(concatenate(pieces))
            failures.append(("zero endpoint accepted", values))
        except NotCollapsible:
            pass
    report(capsys, "collapse of concatenations", failures)
