from __future__ import annotations

import json
from pathlib import Path

import pytest

from convterm.algebra import EnumeratorMatrix
from convterm.encoder import build_trellis, hwam, load_trellis, parse_code_spec

DATA = Path(__file__).parent / "data"

STATES = ("00", "10", "01", "11")

LAMBDA_EX1 = [
    ["1", "x^2", "0", "0"],
    ["0", "0", "x", "x"],
    ["x^2", "1", "0", "0"],
    ["0", "0", "x", "x"],
]

LAMBDA_HAT_EX1 = [
    ["1", "0", "x^2", "0"],
    ["x^2", "0", "1", "0"],
    ["0", "x", "0", "x"],
    ["0", "x", "0", "x"],
]

LAMBDA2_EX1 = [
    ["1", "x^2", "x^3", "x^3"],
    ["x^3", "x", "x^2", "x^2"],
    ["x^2", "x^4", "x", "x"],
    ["x^3", "x", "x^2", "x^2"],
]

LAMBDA4_EX1 = [
    ["1 + 2x^5 + x^6", "x^2 + x^3 + x^4 + x^7", "x^3 + 2x^4 + x^5", "x^3 + 2x^4 + x^5"],
    ["x^3 + 2x^4 + x^5", "x^2 + x^3 + x^5 + x^6", "2x^3 + x^4 + x^6", "2x^3 + x^4 + x^6"],
    ["x^2 + x^3 + x^4 + x^7", "x^2 + x^4 + 2x^5", "x^2 + x^3 + x^5 + x^6", "x^2 + x^3 + x^5 + x^6"],
    ["x^3 + 2x^4 + x^5", "x^2 + x^3 + x^5 + x^6", "2x^3 + x^4 + x^6", "2x^3 + x^4 + x^6"],
]

LAMBDA16_EX1 = [
    ["1 + 14x^5 + 25x^6 + 44x^7", "x^2 + x^3 + 2x^4 + 4x^5 + 8x^6 + 29x^7",
     "x^3 + 2x^4 + 4x^5 + 8x^6 + 16x^7", "x^3 + 2x^4 + 4x^5 + 8x^6 + 16x^7"],
    ["x^3 + 2x^4 + 4x^5 + 8x^6 + 16x^7", "x^5 + 3x^6 + 8x^7", "x^6 + 4x^7", "x^6 + 4x^7"],
    ["x^2 + x^3 + 2x^4 + 4x^5 + 8x^6 + 29x^7", "x^4 + 2x^5 + 5x^6 + 12x^7",
     "x^5 + 3x^6 + 8x^7", "x^5 + 3x^6 + 8x^7"],
    ["x^3 + 2x^4 + 4x^5 + 8x^6 + 16x^7", "x^5 + 3x^6 + 8x^7", "x^6 + 4x^7", "x^6 + 4x^7"],
]

# block codes of 5,7 and its dual 7,5 at N = 4 (rows of 2-bit symbols)
SUBCODE_4 = ["11 01 11 00", "00 11 01 11"]
DUAL_PROJECTION_4 = [
    "11 00 00 00", "10 11 00 00", "11 10 11 00",
    "00 11 10 11", "00 00 11 10", "00 00 00 11",
]
TRUNCATED_4 = ["11 01 11 00", "00 11 01 11", "00 00 11 01", "00 00 00 11"]
DUAL_REVERSE_TRUNCATED_4 = ["11 00 00 00", "10 11 00 00", "11 10 11 00", "00 11 10 11"]
TAILBITING_4 = ["11 01 11 00", "00 11 01 11", "11 00 11 01", "01 11 00 11"]
DUAL_TAILBITING_4 = ["11 10 11 00", "00 11 10 11", "11 00 11 10", "10 11 00 11"]

TB4 = "1 + 2x^2 + 4x^3 + x^4 + 4x^5 + 4x^6"

# a pair of inequivalent codes with equal tail-biting enumerators: C1 = (1, 1+D, D), C2 = (D, D, 1+D)
C1 = "binary:10,11,01"
C2 = "binary:01,01,11"
LAMBDA_1 = [["1", "x^2"], ["x^2", "x^2"]]
LAMBDA_2 = [["1", "x"], ["x^3", "x^2"]]

CORPUS = ["5,7", "7,5", "6,7,2", "2,2,3", "15,13", C1]


def matrix(rows, states=STATES, dmax=None) -> EnumeratorMatrix:
    return EnumeratorMatrix.parse(rows, states, dmax)


@pytest.fixture
def ex1():
    return parse_code_spec("5,7")


@pytest.fixture
def lam(ex1):
    return hwam(build_trellis(ex1))


@pytest.fixture
def dual_trellis_7_5():
    return load_trellis((DATA / "dual_trellis_7_5.json").read_text())


@pytest.fixture
def lam1():
    return hwam(build_trellis(parse_code_spec(C1)))


@pytest.fixture
def lam2():
    return hwam(build_trellis(parse_code_spec(C2)))


def load_json(name: str):
    return json.loads((DATA / name).read_text())


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
