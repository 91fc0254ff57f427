"""Exit criteria. Run with ``pytest tests/test_acceptance.py -v``; a PASS/FAIL
line per criterion is printed in the terminal summary."""

import io
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from eiscong.cli import run
from eiscong.dirichlet import (
    carlitz_integer,
    gen_bernoulli,
    gen_bernoulli_via_polynomials,
    gen_bernoulli_via_recursion,
    quad_character,
)
from eiscong.io import Fixture, emit_fixture, load_fixture, parse_fixture
from eiscong.numberfield import QuadFieldElem, embeddings, norm, reduce

# zeta(2m)/pi^2m: (2m, N_2m factors, D_2m factors), as published.
ZETA_TABLE = [
    (2, [], [[2, 1], [3, 1]]),
    (4, [], [[2, 1], [3, 2], [5, 1]]),
    (6, [], [[3, 3], [5, 1], [7, 1]]),
    (8, [], [[2, 1], [3, 3], [5, 2], [7, 1]]),
    (10, [], [[3, 5], [5, 1], [7, 1], [11, 1]]),
    (12, [[691, 1]], [[3, 6], [5, 3], [7, 2], [11, 1], [13, 1]]),
    (14, [[2, 1]], [[3, 6], [5, 2], [7, 1], [11, 1], [13, 1]]),
    (16, [[3617, 1]], [[2, 1], [3, 7], [5, 4], [7, 2], [11, 1], [13, 1], [17, 1]]),
    (18, [[43867, 1]], [[3, 9], [5, 3], [7, 3], [11, 1], [13, 1], [17, 1], [19, 1]]),
    (20, [[283, 1], [617, 1]], [[3, 9], [5, 5], [7, 2], [11, 2], [13, 1], [17, 1], [19, 1]]),
]

# p * B_{2m,chi}, p = 5, exactly as published (value, signed factorization).
GENBERN_TABLE = [
    (2, 4, [[2, 2]]),
    (4, -40, [[2, 3], [5, 1]]),
    (6, 804, [[2, 2], [3, 1], [67, 1]]),
    (8, -28880, [[2, 4], [5, 1], [19, 2]]),
    (10, 1651004, [[2, 2], [191, 1], [2161, 1]]),
    (12, -138110520, [[2, 3], [3, 1], [5, 1], [1150921, 1]]),
    (14, 15920571604, [[2, 2], [7, 1], [17, 1], [33446579, 1]]),
    (16, -2419747948960, [[2, 5], [5, 1], [457, 1], [33092833, 1]]),
    (18, 468896302250604, [[2, 2], [3, 2], [41, 1], [317680421579, 1]]),
    (20, -112834502909928192, [[2, 8], [3, 1], [146919925663969, 1]]),
]

E6CHI = [Fraction(-67, 5), 1, -31, -242, 993, 1, 7502, -16806, -31775, 58807, -31]

NORM_TABLE = {
    1: None,
    2: [[3, 1], [5, 1], [67, 1]],
    3: [[2, 4], [5, 1], [11, 1], [67, 1]],
    4: [[3, 2], [5, 2], [67, 2]],
    5: [[2, 4], [3, 1], [67, 1]],
    6: [[2, 2], [5, 2], [11, 2], [67, 2]],
    7: [[2, 4], [3, 2], [5, 2], [67, 1], [1171, 1]],
    8: [[3, 1], [5, 2], [67, 1], [200929, 1]],
    9: [[2, 8], [5, 2], [11, 2], [67, 2]],
    10: [[3, 4], [23, 1], [67, 1]],
}

FCHI = {
    1: (1, 0), 2: (0, 1), 3: (0, -3), 4: (-12, 0), 5: (-45, 5),
    6: (132, 0), 7: (0, -9), 8: (0, 20), 9: (-153, 0), 10: (-220, -45),
}


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue()


def structured(*argv):
    code, out = cli(*argv, "--format", "structured")
    return code, json.loads(out)


def timed_subprocess(*argv, env=None):
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "eiscong", *argv], capture_output=True, env=env, check=False
    )
    return proc, time.perf_counter() - start


def _num(cell):
    if isinstance(cell, dict):
        return Fraction(cell["numerator"], cell["denominator"])
    return cell


@pytest.mark.criterion(1, "zeta-table --max 20 reproduces the ten (N, D) rows")
def test_ac1_zeta_table():
    code, tree = structured("zeta-table", "--max", "20")
    assert code == 0
    got = [(r["2m"], r["N_2m"]["factors"], r["D_2m"]["factors"]) for r in tree["rows"]]
    assert got == [(a, b, c) for a, b, c in ZETA_TABLE]
    proc, elapsed = timed_subprocess("zeta-table", "--max", "20")
    assert proc.returncode == 0 and elapsed < 1.0


@pytest.mark.criterion(2, "genbern --p 5 --max 20 --method both reproduces the p*B table")
def test_ac2_genbern_table():
    code, tree = structured("genbern", "--p", "5", "--max", "20", "--method", "both")
    assert code == 0
    assert all(r["methods agree"] is True for r in tree["rows"])
    mismatches = []
    for row, (two_m, value, factors) in zip(tree["rows"], GENBERN_TABLE):
        got = (row["2m"], row["p*B_2m,chi"], row["factorization"]["factors"])
        if got != (two_m, value, factors):
            mismatches.append(f"2m={two_m}: computed {got[1]} = {got[2]}, published {value} = {factors}")
    proc, elapsed = timed_subprocess("genbern", "--p", "5", "--max", "20", "--method", "both")
    assert proc.returncode == 0 and elapsed < 1.0
    assert not mismatches, "; ".join(mismatches)


@pytest.mark.criterion(3, "5*B_16,chi is integral and B_17,chi = 0")
def test_ac3_float_regression():
    chi = quad_character(5)
    assert (5 * gen_bernoulli(chi, 16)).denominator == 1
    assert carlitz_integer(chi, 16) == -2419747948960
    assert gen_bernoulli(chi, 17) == 0


@pytest.mark.criterion(4, "scan flags 67 at 2m=6 (p=5) and 691, 3617, 43867, {283, 617} (zeta)")
def test_ac4_scan():
    code, tree = structured("scan", "--p", "5", "--max", "20")
    assert code == 0
    cands = {r["2m"]: r["candidates"] for r in tree["rows"]}
    assert cands[2] == [] and cands[4] == [] and cands[6] == [67]
    code, tree = structured("scan", "--zeta", "--max", "20")
    cands = {r["2m"]: r["candidates"] for r in tree["rows"]}
    assert cands == {2: [], 4: [], 6: [], 8: [], 10: [], 12: [691], 14: [], 16: [3617], 18: [43867], 20: [283, 617]}
    for argv in (("scan", "--p", "5", "--max", "20"), ("scan", "--zeta", "--max", "20")):
        proc, elapsed = timed_subprocess(*argv)
        assert proc.returncode == 0 and elapsed < 2.0


@pytest.mark.criterion(5, "eisenstein --p 5 --k 6 --terms 11 matches the displayed expansion")
def test_ac5_eisenstein():
    code, tree = structured("eisenstein", "--p", "5", "--k", "6", "--terms", "11")
    assert code == 0
    assert [_num(r["a_n"]) for r in tree["rows"]] == E6CHI


@pytest.mark.criterion(6, "norms table rows 1..10 match; row 0 is 67^2/5^2 and flagged")
def test_ac6_norms():
    code, tree = structured("norms", "--fixture", "fchi.qexp", "--terms", "11")
    assert code == 0
    rows = tree["rows"]
    for n in range(1, 11):
        if NORM_TABLE[n] is None:
            assert rows[n]["norm"] == 0
        else:
            assert rows[n]["factorization"] == {"sign": 1, "factors": NORM_TABLE[n]}
    assert _num(rows[0]["norm"]) == Fraction(67**2, 5**2)
    assert rows[0]["factorization"]["factors"] == [[5, -2], [67, 2]]
    assert rows[0]["flag"]
    assert not any(r["flag"] for r in rows[1:])


@pytest.mark.criterion(7, "verify (embed, l=67) passes with Sturm bound 3; perturbations exit 1")
def test_ac7_main_theorem(tmp_path):
    argv = ["verify", "--fixture", "fchi.qexp", "--p", "5", "--k", "6", "--ell", "67", "--mode", "embed"]
    code, tree = structured(*argv)
    assert code == 0
    assert tree["meta"]["sturm bound"] == 3 and tree["meta"]["root"] in (31, 36)
    assert tree["meta"]["result"] == f"pass, root {tree['meta']['root']}"
    code, text = cli(*argv)
    assert code == 0 and "pass, root 36" in text

    base = load_fixture("fchi.qexp")
    for n in range(4):
        for slot in (1, 2):
            rows = [list(r) for r in base.rows]
            rows[n][slot] += 1
            bad = Fixture(base.label, base.level, base.weight, base.character, base.minpoly,
                          tuple(tuple(r) for r in rows))
            path = tmp_path / f"bad_{n}_{slot}.qexp"
            path.write_text(emit_fixture(bad))
            code, _ = cli("verify", "--fixture", str(path), "--p", "5", "--k", "6", "--ell", "67", "--mode", "embed")
            assert code == 1, f"perturbing n={n} slot={slot} did not fail"


@pytest.mark.criterion(8, "verify-level1 691 and 3617 pass up to 100 terms")
def test_ac8_level1():
    for which in ("691", "3617"):
        proc, elapsed = timed_subprocess("verify-level1", "--which", which, "--terms", "100", "--format", "structured")
        assert proc.returncode == 0 and elapsed < 5.0
        tree = json.loads(proc.stdout)
        assert tree["meta"]["result"] == "pass"
        assert tree["meta"]["coefficients compared"] == "0..100"
        primes = [r["p"] for r in tree["rows"]]
        assert primes[0] == 2 and primes[-1] == 97 and len(primes) == 25
        assert all(r["difference mod l"] == 0 for r in tree["rows"])


@pytest.mark.criterion(9, "property suites")
@pytest.mark.parametrize("p", [5, 13, 17, 29])
def test_ac9_methods_vanishing_carlitz(p):
    chi = quad_character(p)
    table = gen_bernoulli_via_recursion(chi, 40)
    for n in range(2, 41, 2):
        poly = gen_bernoulli_via_polynomials(chi, n)
        assert poly == table[n]
        assert (p * poly).denominator == 1
    for n in [0, *range(1, 42, 2)]:
        assert gen_bernoulli_via_polynomials(chi, n) == 0


@pytest.mark.criterion(9, "property suites")
def test_ac9_field_properties_on_1000_elements():
    rng = random.Random(1000)
    embs = embeddings(-44, 67)

    def rand_elem():
        def q():
            den = rng.choice([d for d in range(1, 60) if d % 67])
            return Fraction(rng.randrange(-10**6, 10**6), den)
        return QuadFieldElem(q(), q(), -44)

    for _ in range(1000):
        x, y = rand_elem(), rand_elem()
        assert norm(x * y) == norm(x) * norm(y)
        for e in embs:
            assert reduce(x + y, e) == (reduce(x, e) + reduce(y, e)) % 67
            assert reduce(x * y, e) == reduce(x, e) * reduce(y, e) % 67


@pytest.mark.criterion(9, "property suites")
def test_ac9_fixture_round_trip():
    fx = load_fixture("fchi.qexp")
    assert parse_fixture(emit_fixture(fx)) == fx


@pytest.mark.criterion(9, "property suites")
@pytest.mark.parametrize(
    "argv",
    [
        ["zeta-table", "--max", "20"],
        ["genbern", "--p", "5", "--max", "20", "--format", "structured"],
        ["scan", "--p", "5", "--max", "20", "--format", "csv"],
        ["norms", "--fixture", "fchi.qexp", "--terms", "11"],
        ["verify", "--fixture", "fchi.qexp", "--ell", "67", "--mode", "norm", "--terms", "11", "--format", "structured"],
    ],
)
def test_ac9_byte_identical_runs(argv):
    outs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc, _ = timed_subprocess(*argv, env=env)
        assert proc.returncode == 0
        outs.append(proc.stdout)
    assert outs[0] == outs[1]


@pytest.mark.criterion(10, "cusp form fixture matches the displayed expansion verbatim")
def test_ac10_fixture_verbatim():
    fx = load_fixture("fchi.qexp")
    assert fx.minpoly == (44, 0, 1) and (fx.level, fx.weight, fx.character) == (5, 6, 5)
    assert {n: (a, b) for n, a, b in fx.rows if n} == FCHI
    assert "5.6.b.a" in fx.label
