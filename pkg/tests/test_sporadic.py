"""Sporadic-row locators and their certificates."""

import numpy as np
import pytest

from grpfact import sporadic
from grpfact.sporadic import (
    SPECTRA,
    exact_spectrum,
    locate_a7,
    locate_4xa5,
    locate_two_a5_classes,
    sp4_2_derived,
    subgroups_conjugate,
)


@pytest.fixture
def rng():
    return np.random.default_rng(424242)


def test_sp42_derived():
    d = sp4_2_derived()
    assert d.order() == 360
    assert exact_spectrum(d.chain()) == frozenset({1, 2, 3, 4, 5})


def test_two_a5_classes(rng):
    X, Y, info = locate_two_a5_classes(rng)
    assert X.order() == Y.order() == 60
    assert exact_spectrum(X.chain()) == SPECTRA["A5"]
    Z = sporadic.psl2_9()
    assert not subgroups_conjugate(Z, X, Y)
    assert subgroups_conjugate(Z, X, X)


def test_a7_certificates(rng):
    A7, info = locate_a7(rng)
    assert A7.order() == 2520
    assert exact_spectrum(A7.chain()) == SPECTRA["A7"]
    assert info["tries"] >= 1


def test_search_rejects_supergroups(rng):
    # inside SL_4(2) ~ A8 a two-generator search for A7 must never return
    # the whole ambient; exercised implicitly, asserted via the certificate
    A7, _ = locate_a7(rng)
    chain = A7.chain()
    assert chain.verified
    assert chain.order() == 2520


def test_4xa5_structure(rng):
    X, info = locate_4xa5(rng)
    assert X.order() == 240
    assert info["linear_order"] == 480
    spectrum = exact_spectrum(X.chain())
    # 4 x A5 has elements of order 4, 12, 20 absent from plain A5
    assert 4 in spectrum and 60 not in spectrum


def test_psl2_13_pipeline(rng):
    X1, X2, info = sporadic.locate_two_psl2_13(rng)
    assert X1.order() == X2.order() == 1092
    assert info["classes_split_certified"]
    assert info["commutant_dimension"] == 1
    assert info["outer_twist_intertwiner_dimension"] == 0
    assert exact_spectrum(X1.chain()) == SPECTRA["PSL2_13"]


def test_extension_ambients():
    for outer in ("gamma", "phi", "phi_gamma"):
        Z = sporadic.psl3_4_ext(outer)
        assert Z.order() == 40320


def test_locate_sporadic_dispatcher(rng):
    group, info = sporadic.locate_sporadic("A5_class1", rng)
    assert group.order() == 60
    with pytest.raises(Exception):
        sporadic.locate_sporadic("unknown_target", rng)
