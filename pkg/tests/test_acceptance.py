"""Acceptance criteria 1-9; the terminal summary prints one PASS/FAIL line per criterion."""

from __future__ import annotations

import math
import random
import xml.etree.ElementTree as ET
from fractions import Fraction
from itertools import product as cartesian
from math import gcd
from pathlib import Path

import pytest

from almost_toric.base import (
    DiskBase,
    FactorizationWord,
    boundary_monodromy,
    canonical_form,
    euler_characteristic,
    validate,
)
from almost_toric.classify import (
    SurgerySpec,
    TorusBundleRelation as R,
    classify,
    surgery_compatible,
    torus_bundle_equivalent,
)
from almost_toric.cli import main
from almost_toric.corpus import e1_word
from almost_toric.diagram import parse, serialize
from almost_toric.geometry import node_turning_angle, total_turning
from almost_toric.lattice import LatticeVector as V, ParabolicMonodromy, UnimodularMatrix as M, cross
from almost_toric.moves import (
    MoveError,
    at_blowdown,
    at_blowup,
    branch_move,
    nodal_slide,
    nodal_trade,
)
from almost_toric.normalize import reduce_n, to_toric
from almost_toric.render import render_svg

GOLDEN = Path(__file__).parent / "data" / "golden"


def _matrix(e: V, m: int = 1) -> M:
    # written out independently of the library's parabolic class
    a, b = e.x, e.y
    return M(1 - m * a * b, m * a * a, -m * b * b, 1 + m * a * b)


@pytest.mark.criterion(1, "twelve-factor word: identity product, 2pi and 4pi total turning")
def test_criterion_1_twelve_word():
    word = e1_word()
    product = M.identity()
    for p in word:
        product = product @ _matrix(p.eigen)
    assert product.is_identity()
    assert abs(total_turning(word, V(1, 0)).total - 2 * math.pi) <= 1e-9
    doubled = FactorizationWord(word.factors * 2)
    assert abs(total_turning(doubled, V(1, 0)).total - 4 * math.pi) <= 2e-9


@pytest.mark.criterion(2, "nonnegativity and squared-cross identity on 10,000 random pairs")
def test_criterion_2_nonnegativity():
    rng = random.Random(2)
    checked = 0
    while checked < 10_000:
        p, q = rng.randint(-50, 50), rng.randint(-50, 50)
        if gcd(p, q) != 1:
            continue
        x, y = rng.randint(-50, 50), rng.randint(-50, 50)
        a = ParabolicMonodromy(V(p, q))
        v = V(x, y)
        c = cross(a.apply(v), v)
        assert c >= 0
        assert c == (q * x - p * y) ** 2
        checked += 1


@pytest.mark.criterion(3, "turning angle of A_(1,0) at (-1,2) is arctan(4/3)")
def test_criterion_3_known_angle():
    theta = node_turning_angle(ParabolicMonodromy(V(1, 0)), V(-1, 2))
    assert abs(theta - math.atan(4 / 3)) <= 1e-12


@pytest.mark.criterion(4, "scramble-and-recover on the 500-base corpus")
def test_criterion_4_scramble_and_recover(full_corpus):
    assert len(full_corpus) == 500
    failures = []
    for i, s in enumerate(full_corpus):
        reduced, trace = reduce_n(s.base)
        fan, _ = to_toric(s.base)
        result = classify(s.base)
        ok = (
            set(reduced.n_values()) <= {0, 1}
            and trace.max_n_history[-1] <= 1
            and fan.is_delzant()
            and validate(fan).ok
            and result == s.expected
        )
        if not ok:
            failures.append((i, s.name, s.blowups, result, s.expected))
    assert failures == []


def _conjugation_witness(old: DiskBase, j: int, direction: str) -> M:
    """C with M_new = C M_old C^-1 for a branch move at corner j."""
    k = old.k
    a = [_matrix(old.corner_monodromy(i).eigen, old.corner_monodromy(i).multiplicity) for i in range(k)]
    if j < k - 1:
        return M.identity()
    if direction == "forward":
        return a[k - 1] @ a[0].inverse()
    return a[0].inverse() @ a[k - 1]


@pytest.mark.criterion(5, "invariance suite over the corpus")
def test_criterion_5_invariance(full_corpus):
    rng = random.Random(5)
    failures = []
    for i, s in enumerate(full_corpus):
        base = s.base
        chi = euler_characteristic(base)
        mono = boundary_monodromy(base)
        for direction in ("forward", "backward"):
            j = rng.randrange(base.k)
            try:
                moved, _ = branch_move(base, j, direction)
            except MoveError:
                continue
            c = _conjugation_witness(base, j, direction)
            if euler_characteristic(moved) != chi or boundary_monodromy(moved) != c @ mono @ c.inverse():
                failures.append((i, "branch", direction, j))
        node = rng.choice(base.node_indices())
        slid, _ = nodal_slide(base, node, Fraction(rng.randint(1, 9), 10))
        if euler_characteristic(slid) != chi:
            failures.append((i, "slide"))
        ones = [n for n in base.node_indices() if base.n(n) == 1 and base.corner(n).multiplicity == 1]
        if ones:
            untraded, _ = nodal_trade(base, ones[0], "node_to_vertex")
            traded, _ = nodal_trade(untraded, ones[0], "vertex_to_node")
            if euler_characteristic(untraded) != chi or euler_characteristic(traded) != chi:
                failures.append((i, "trade"))
        e = rng.randrange(base.k)
        up, _ = at_blowup(base, e)
        down, _ = at_blowdown(up, e + 1)
        if euler_characteristic(up) != chi + 1 or euler_characteristic(down) != chi:
            failures.append((i, "blowup"))
        if classify(canonical_form(base)) != s.expected:
            failures.append((i, "canonical"))
    assert failures == []


@pytest.mark.criterion(6, "classification lookups, byte-exact CLI output against golden files")
@pytest.mark.parametrize("name", sorted(p.stem for p in GOLDEN.glob("*.base")))
def test_criterion_6_golden(capsys, name):
    assert main(["classify", str(GOLDEN / f"{name}.base")]) == 0
    out = capsys.readouterr().out
    assert out.encode() == (GOLDEN / f"{name}.expected").read_bytes()


def _bundle_oracle(a, b, box: int = 40) -> bool:
    lam, m, n = a
    return any(
        b[0] == eps * lam and b[2] == eps * n and b[1] == m + k * lam + l * n
        for eps in (1, -1)
        for k in range(-box, box + 1)
        for l in range(-box, box + 1)
    )


@pytest.mark.criterion(7, "torus-bundle relation on 200 random triples")
def test_criterion_7_torus_bundles():
    rng = random.Random(7)
    triples = [tuple(rng.randint(-5, 5) for _ in range(3)) for _ in range(200)]
    eq = lambda x, y: torus_bundle_equivalent(x, y) is R.EQUIVALENT_BUNDLES  # noqa: E731
    for t in triples:
        lam, m, n = t
        assert eq(t, t)
        k, l, eps = rng.randint(-4, 4), rng.randint(-4, 4), rng.choice((1, -1))
        image = (eps * lam, m + k * lam + l * n, eps * n)
        assert eq(t, image) and eq(image, t)
        k2, l2, eps2 = rng.randint(-4, 4), rng.randint(-4, 4), rng.choice((1, -1))
        second = (eps2 * image[0], image[1] + k2 * image[0] + l2 * image[2], eps2 * image[2])
        assert eq(image, second) and eq(t, second)
        assert _bundle_oracle(t, second)
    for a, b, c in zip(triples, triples[1:], triples[2:]):
        assert eq(a, b) == eq(b, a) == _bundle_oracle(a, b)
        if eq(a, b) and eq(b, c):
            assert eq(a, c)
    assert torus_bundle_equivalent((2, 1, 0), (2, 0, 0)) is R.EQUAL_DIFFEO_TYPE_B1_GE_3


def _word(eigens) -> FactorizationWord:
    return FactorizationWord(tuple(ParabolicMonodromy(e) for e in eigens))


def _surgery_oracle(eigens_a, eigens_b, v):
    def images(eigens):
        out, acc = [], M.identity()
        for e in eigens:
            acc = _matrix(e) @ acc  # A_i ... A_1
            out.append(acc @ v)
        return out

    def changes(values):
        signs = [1 if x > 0 else -1 for x in values if x != 0]
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    ia, ib = images(eigens_a), images(eigens_b)
    end_a = ia[-1] if ia else v
    end_b = ib[-1] if ib else v
    return (
        end_a == end_b,
        changes([cross(w, v) for w in ia]),
        changes([cross(w, v) for w in ib]),
    )


@pytest.mark.criterion(8, "surgery compatibility examples and brute-force oracle on 1,000 specs")
def test_criterion_8_surgery():
    a = surgery_compatible(SurgerySpec(_word([V(1, 1), V(2, -1)]), _word([V(1, 1), V(2, -1)]), V(1, 2)))
    assert a.compatible
    b = surgery_compatible(SurgerySpec(_word([V(1, 0)]), _word([V(1, 0), V(1, 0)]), V(1, 0)))
    assert (b.vector_match, b.sign_changes_a, b.sign_changes_b, b.compatible) == (True, 0, 0, True)
    c = surgery_compatible(SurgerySpec(_word([V(1, 0)]), _word([V(0, 1)]), V(1, 1)))
    assert ParabolicMonodromy(V(1, 0)).apply(V(1, 1)) == V(2, 1)
    assert ParabolicMonodromy(V(0, 1)).apply(V(1, 1)) == V(1, 0)
    assert not c.vector_match and not c.compatible

    eigens = sorted({V(x, y).sign_normalized() for x, y in cartesian(range(-2, 3), repeat=2)
                     if gcd(x, y) == 1}, key=lambda v: (v.x, v.y))
    words = [w for n in range(0, 4) for w in cartesian(eigens, repeat=n)]
    rng = random.Random(8)
    for _ in range(1000):
        wa, wb = rng.choice(words), rng.choice(words)
        v = V(0, 0)
        while v.is_zero():
            v = V(rng.randint(-3, 3), rng.randint(-3, 3))
        report = surgery_compatible(SurgerySpec(_word(wa), _word(wb), v))
        match, ca, cb = _surgery_oracle(wa, wb, v)
        assert (report.vector_match, report.sign_changes_a, report.sign_changes_b) == (match, ca, cb)
        assert report.compatible == (match and ca == cb)


@pytest.mark.criterion(9, "parse/serialize round-trip on the corpus and SVG element counts")
def test_criterion_9_io(full_corpus):
    for s in full_corpus:
        text = serialize(s.base)
        assert parse(text) == s.base
        assert serialize(parse(text)) == text
    ns = "{http://www.w3.org/2000/svg}"
    for s in full_corpus[:50]:
        svg = render_svg(s.base)
        root = ET.fromstring(svg.split("\n", 1)[1])
        classes = [el.get("class") for el in root.iter() if el.get("class")]
        nodes = len(s.base.node_indices())
        assert classes.count("edge") == s.base.k
        assert classes.count("node") == nodes
        assert classes.count("branch") == nodes
        assert sum(1 for el in root.iter(ns + "path") if el.get("class") == "branch") == nodes
