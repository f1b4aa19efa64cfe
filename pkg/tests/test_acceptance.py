"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed
in the terminal summary (see ``conftest.py``)."""

import itertools
import subprocess
import sys
import time

import pytest

from funint import (
    D, DT, G, K, KT, N, DiagramId, alpha_equal, bang_leq, check_bang_order,
    check_diagram, dialectica, diller_nahm, interpret_al, interpret_il,
    interpret_qreal, kreisel, parse_formula, print_formula, run_check,
)

BUDGET = 60.0
CORPUS_SIZE = 1278
SIG = {"P": (), "Q": (), "R": (N,)}


def timed(diagram):
    t0 = time.perf_counter()
    report = check_diagram(diagram, 3, SIG)
    return report, time.perf_counter() - t0


def assert_all_pass(report):
    assert report.first_failure is None, report.summary()
    assert report.passed == report.total


@pytest.mark.criterion(1, "MR diagram, 100% over depth-3 corpus within 60 s")
def test_criterion_1_mr():
    report, elapsed = timed(DiagramId.MR)
    assert report.total == CORPUS_SIZE
    assert_all_pass(report)
    assert elapsed <= BUDGET


@pytest.mark.criterion(2, "RREAL and DIAL diagrams, 100% within 60 s each")
@pytest.mark.parametrize("diagram", [DiagramId.RREAL, DiagramId.DIAL], ids=lambda d: d.value)
def test_criterion_2_rreal_dial(diagram):
    report, elapsed = timed(diagram)
    assert report.total == CORPUS_SIZE
    assert_all_pass(report)
    assert elapsed <= BUDGET


@pytest.mark.criterion(3, "MRT and QREAL diagrams, 100%")
@pytest.mark.parametrize("diagram", [DiagramId.MRT, DiagramId.QREAL], ids=lambda d: d.value)
def test_criterion_3_mrt_qreal(diagram):
    report, elapsed = timed(diagram)
    assert report.total == CORPUS_SIZE
    assert_all_pass(report)
    assert elapsed <= BUDGET


@pytest.mark.criterion(4, "pure-fragment coincidence under six specs, 100%")
def test_criterion_4_pure():
    report = run_check("pure", 3, SIG)
    assert report.total > 0
    assert_all_pass(report)


@pytest.mark.criterion(5, "Stein boundaries: inf equals k, 0 bounds by N-indexed functions")
def test_criterion_5_stein():
    report = run_check("stein", 3, SIG)
    assert report.total >= CORPUS_SIZE
    assert_all_pass(report)


FIGURE = {  # (upper, lower) pairs read off the published ordering diagram, plus reflexivity
    (KT, KT), (KT, K), (KT, DT), (KT, D), (KT, G),
    (K, K), (K, D), (K, G),
    (DT, DT), (DT, D), (DT, G),
    (D, D), (D, G),
    (G, G),
}


@pytest.mark.criterion(6, "bang order matches the ordering diagram on 25 pairs and is a partial order")
def test_criterion_6_bang_order():
    mods = (K, D, G, KT, DT)
    for a, b in itertools.product(mods, repeat=2):
        assert bang_leq(a, b) == ((a, b) in FIGURE), (a, b)
    assert_all_pass(check_bang_order())


@pytest.mark.criterion(7, "well-formedness sweep: typing and free-variable invariant, 100%")
def test_criterion_7_well_formed():
    report = run_check("wf", 3, SIG)
    assert report.total > CORPUS_SIZE
    assert_all_pass(report)


def shape(r):
    return ([str(v.type) for v in r.witnesses], [str(v.type) for v in r.challenges],
            print_formula(r.matrix))


@pytest.mark.criterion(8, "golden hand-derived examples reproduce exactly")
def test_criterion_8_golden():
    p = parse_formula
    assert shape(interpret_il(p("forall z:N. exists w:N. P(z,w)"), dialectica())) == \
        (["N->N"], ["N"], "P(c0, w0 c0)")
    imp = p("(forall z:N. P(z)) -> Q")
    assert shape(interpret_il(imp, dialectica())) == (["N"], [], "P(w0) -> Q")
    assert shape(interpret_il(imp, kreisel())) == ([], [], "(forall v0:N. P(v0)) -> Q")
    assert shape(interpret_il(imp, diller_nahm())) == \
        (["set(N)"], [], "(forall v0:N in w0. P(v0)) -> Q")
    assert shape(interpret_al(p("!k forall z:N. P(z)"))) == ([], [], "!k (forall v0:N. P(v0))")
    assert shape(interpret_al(p("!d forall z:N. P(z)"))) == \
        ([], ["set(N)"], "!d (forall v0:N in c0. P(v0))")
    assert shape(interpret_al(p("!kt P"))) == ([], [], "!kt P * !kt P")
    assert shape(interpret_qreal(p("exists z:N. P(z)"))) == (["N"], [], "P(w0) & P(w0)")


_JSON_SCRIPT = """
from funint import *
for f in enumerate_formulas(None, 2, IL):
    print(emit_json(interpret_il(f, diller_nahm())))
print(emit_json(run_check("qreal", 2)))
"""


@pytest.mark.criterion(9, "parse/print round trip on the corpus and byte-stable JSON")
def test_criterion_9_round_trip(il_corpus, al_corpus):
    for f in il_corpus + al_corpus:
        assert alpha_equal(parse_formula(print_formula(f)), f), print_formula(f)
    runs = [subprocess.run([sys.executable, "-c", _JSON_SCRIPT], capture_output=True,
                           check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0]
