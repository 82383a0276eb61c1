"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also repeated in the terminal summary.
"""

from __future__ import annotations

import random
from contextlib import contextmanager

from convterm.algebra import Gf2Matrix, WeightEnumerator, em_mul, em_pow, gf2_null_space, we_mul
from convterm.brute_force import dual_code, enumerate_weights, first_return_weights, sets_equal
from convterm.duality import macwilliams_transform
from convterm.encoder import CatastrophicEncoderError, CodeSpec, build_trellis, hwam, load_trellis, parse_code_spec
from convterm.spectrum import free_spectrum, normalized_spectrum, union_bound
from convterm.terminator import (
    BlockCodeMatrix,
    TerminationKind as K,
    generator_matrix,
    min_distance_terminated,
    termination_enumerator,
)

from conftest import (
    ACCEPTANCE,
    C1,
    C2,
    DATA,
    DUAL_PROJECTION_4,
    DUAL_REVERSE_TRUNCATED_4,
    DUAL_TAILBITING_4,
    LAMBDA4_EX1,
    LAMBDA16_EX1,
    LAMBDA_EX1,
    LAMBDA_HAT_EX1,
    SUBCODE_4,
    TAILBITING_4,
    TB4,
    TRUNCATED_4,
    matrix,
)

P = WeightEnumerator.parse
PAIRINGS = [(K.SUBCODE, K.PROJECTION), (K.TRUNCATED, K.REVERSE_TRUNCATED), (K.TAILBITING, K.TAILBITING)]


@contextmanager
def criterion(number: int, title: str):
    try:
        yield
    except BaseException as exc:
        line = f"criterion {number:2d}: FAIL  {title}  ({type(exc).__name__}: {exc})"
        ACCEPTANCE[number] = line
        print(line)
        raise
    line = f"criterion {number:2d}: PASS  {title}"
    ACCEPTANCE[number] = line
    print(line)


def lam_of(code: str):
    return hwam(build_trellis(parse_code_spec(code)))


def test_criterion_01_hwam():
    with criterion(1, "HWAM and dual HWAM of 5,7 match exactly; dual equals transpose"):
        lam = lam_of("5,7")
        lam_hat = hwam(load_trellis((DATA / "dual_trellis_7_5.json").read_text()))
        assert lam == matrix(LAMBDA_EX1)
        assert lam_hat == matrix(LAMBDA_HAT_EX1)
        assert lam_hat == lam.transpose()


def test_criterion_02_powers():
    with criterion(2, "fourth power exact; sixteenth power exact mod x^8"):
        lam = lam_of("5,7")
        assert em_pow(lam, 4) == matrix(LAMBDA4_EX1)
        assert em_pow(lam, 16, dmax=7) == matrix(LAMBDA16_EX1, dmax=7)


def test_criterion_03_traces():
    with criterion(3, "trace of fourth and sixteenth powers"):
        lam = lam_of("5,7")
        assert em_pow(lam, 4).trace() == P(TB4)
        assert em_pow(lam, 16, dmax=7).trace() == P("1 + 16x^5 + 32x^6 + 64x^7", dmax=7)


def test_criterion_04_generator_matrices():
    with criterion(4, "five golden N=4 block codes reproduced as row spaces, distances 5,2,2,2,2"):
        c, d = parse_code_spec("5,7"), parse_code_spec("7,5")
        cases = [
            (c, K.SUBCODE, SUBCODE_4, 5),
            (d, K.PROJECTION, DUAL_PROJECTION_4, 2),
            (c, K.TRUNCATED, TRUNCATED_4, 2),
            (d, K.REVERSE_TRUNCATED, DUAL_REVERSE_TRUNCATED_4, 2),
            (c, K.TAILBITING, TAILBITING_4, 2),
            (d, K.TAILBITING, DUAL_TAILBITING_4, 2),
        ]
        for spec, kind, rows, dist in cases:
            golden = BlockCodeMatrix.from_symbol_rows(rows, 2)
            assert sets_equal(generator_matrix(spec, kind, 4), golden), kind
            assert min_distance_terminated(spec, kind, 4) == dist, kind


def test_criterion_05_macwilliams_battery():
    with criterion(5, "transform of every terminated enumerator equals brute-force dual, N <= 8"):
        spec = parse_code_spec("5,7")
        lam = hwam(build_trellis(spec))
        lam_dual = lam_of("7,5")
        for n in range(1, 9):
            for kind, _ in PAIRINGS + [(dk, k) for k, dk in PAIRINGS]:
                g = generator_matrix(spec, kind, n)
                w = termination_enumerator(lam, kind, n, distinct=True)
                assert macwilliams_transform(w, g.n_block, g.rank) == enumerate_weights(dual_code(g)), (kind, n)
            for kind, dual_kind in PAIRINGS:
                g = generator_matrix(spec, kind, n)
                w = termination_enumerator(lam, kind, n, distinct=True)
                w_dual = termination_enumerator(lam_dual, dual_kind, n, distinct=True)
                assert macwilliams_transform(w, g.n_block, g.rank) == w_dual, (kind, n)
        tb4 = termination_enumerator(lam, K.TAILBITING, 4)
        assert macwilliams_transform(tb4, 8, 4) == tb4


def test_criterion_06_free_spectrum():
    with criterion(6, "free spectrum {5:1,6:2,7:4}, path enumeration to d=10, tail-biting N=16 is 16x"):
        t = build_trellis(parse_code_spec("5,7"))
        lam = hwam(t)
        assert free_spectrum(lam, 7).counts == {5: 1, 6: 2, 7: 4}
        assert free_spectrum(lam, 10).counts == first_return_weights(t, 10).as_dict()
        assert normalized_spectrum(lam, K.TAILBITING, 16, 7).counts == {5: 16, 6: 32, 7: 64}


def test_criterion_07_tailbiting_distance():
    with criterion(7, "tail-biting distance 2 at N=4 and 5 for N in 10..16"):
        spec = parse_code_spec("5,7")
        assert min_distance_terminated(spec, K.TAILBITING, 4) == 2
        for n in range(10, 17):
            assert min_distance_terminated(spec, K.TAILBITING, n) == 5, n


def test_criterion_08_equivalent_codes():
    # C1 = (1, 1+D, D) is written in binary; its octal form under the LSB = D^0 reading is 1,3,2
    with criterion(8, "C1 vs C2: subcode and trace equal to N=20, projections differ at N=1, spectra equal"):
        assert parse_code_spec(C2) == parse_code_spec("2,2,3")
        l1, l2 = lam_of(C1), lam_of(C2)
        p1, p2 = l1, l2
        for n in range(1, 21):
            assert p1[0, 0] == p2[0, 0], n
            assert p1.trace() == p2.trace(), n
            p1, p2 = em_mul(p1, l1), em_mul(p2, l2)
        assert termination_enumerator(l1, K.PROJECTION, 1) == P("1 + 3x^2")
        assert termination_enumerator(l2, K.PROJECTION, 1) == P("1 + x + x^2 + x^3")
        assert free_spectrum(l1, 12).counts == free_spectrum(l2, 12).counts


def random_spec(rng: random.Random) -> CodeSpec:
    while True:
        n = rng.choice((2, 3))
        nu = rng.randint(1, 4)
        gens = [rng.randrange(1 << (nu + 1)) for _ in range(n)]
        gens[rng.randrange(n)] |= 1 | (1 << nu)
        try:
            spec = CodeSpec(tuple(gens))
            build_trellis(spec)
        except CatastrophicEncoderError:
            continue
        return spec


def test_criterion_09_randomized_properties():
    with criterion(9, "100 random codes: semiring laws, involution, double dual, oracle equivalence"):
        rng = random.Random(20261016)
        for case in range(100):
            spec = random_spec(rng)
            lam = hwam(build_trellis(spec))
            n_max = rng.randint(1, 6)

            a, b, c = (lam[rng.randrange(lam.dim), rng.randrange(lam.dim)] + P("1") for _ in range(3))
            assert we_mul(we_mul(a, b), c) == we_mul(a, we_mul(b, c))
            assert we_mul(a, b) == we_mul(b, a)
            assert we_mul(a, b + c) == we_mul(a, b) + we_mul(a, c)
            assert em_mul(em_mul(lam, lam), lam) == em_mul(lam, em_mul(lam, lam))

            power = lam
            for n in range(1, n_max + 1):
                for kind in K:
                    g = generator_matrix(spec, kind, n)
                    w = termination_enumerator(lam, kind, n, distinct=True)
                    assert w == enumerate_weights(g), (case, spec, kind, n)
                    k = g.rank
                    t = macwilliams_transform(w, g.n_block, k)
                    assert macwilliams_transform(t, g.n_block, g.n_block - k) == w
                    dd = gf2_null_space(gf2_null_space(g.gens))
                    assert sets_equal(Gf2Matrix(dd.rows, g.n_block), g.gens)
                assert power.trace() == termination_enumerator(lam, K.TAILBITING, n)
                power = em_mul(power, lam)


def test_criterion_10_union_bound():
    with criterion(10, "C1 and C2 union bounds equal as exact rationals; p=0 gives 0"):
        s1 = normalized_spectrum(lam_of(C1), K.TAILBITING, 16, 12)
        s2 = normalized_spectrum(lam_of(C2), K.TAILBITING, 16, 12)
        for p in ("0.001", "0.01", "0.05"):
            b1, b2 = union_bound(s1, p), union_bound(s2, p)
            assert b1.per_unit_event_bound == b2.per_unit_event_bound, p
            assert b1.per_unit_event_bound > 0
        assert union_bound(s1, 0).per_unit_event_bound == 0
        assert union_bound(s2, 0).per_unit_event_bound == 0
