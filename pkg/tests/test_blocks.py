import random

import pytest
from hypothesis import given, strategies as st

from generators import random_block, random_sl2z, sl2z_matrices
from oddchi import sl2z
from oddchi.blocks import (
    BlockKind,
    BoundaryLabel,
    build_block,
    cap,
    connector,
    core,
    genus_bundle_chi,
    genus_three_bundle,
    labels_glueable,
    monodromy_product_is_identity,
    reversed_block,
    six_cap,
    splitter,
    torus_bundle_over_punctured_sphere,
    twist_cobordism,
)

ta, tb, phi = sl2z.twist_a(), sl2z.twist_b(), sl2z.phi()
TAU = sl2z.classify(ta)
TAU_INV = sl2z.classify(sl2z.invert(ta))


def classes(b):
    return [l.monodromy for l in b.boundaries]


def test_core():
    b = core()
    assert b.chi == 1 and b.sigma_claimed == 1
    assert len(b.boundaries) == 1
    assert b.boundaries[0].monodromy == sl2z.classify(phi)


def test_splitter():
    b = splitter()
    assert b.chi == 0 and b.sigma_claimed == 1
    assert classes(b) == [sl2z.classify(sl2z.invert(phi)), TAU, TAU, TAU]
    assert sl2z.are_conjugate(b.monodromies[1], b.monodromies[2])


def test_connector():
    b = connector(ta)
    assert b.chi == 0 and b.sigma_claimed == 0
    assert classes(b) == [TAU_INV, TAU_INV, TAU, TAU]
    assert "assumed" in b.sigma_source


def test_cap():
    b = cap()
    assert b.chi == 4 and b.sigma_claimed == -1
    assert b.boundaries[0].monodromy == TAU
    assert str(b.boundaries[0].monodromy) == "Parabolic(+,1)"
    assert reversed_block(b).boundaries[0].monodromy == TAU_INV


def test_six_cap():
    b = six_cap()
    assert (b.chi, b.sigma_claimed, len(b.boundaries)) == (0, -4, 6)


def test_higher_genus_blocks():
    assert genus_three_bundle().chi == 20
    assert twist_cobordism(3).chi == 0
    assert genus_bundle_chi(3) == (2 - 7) * (2 - 2 * 3) == 20
    with pytest.raises(ValueError):
        twist_cobordism(1)
    b = twist_cobordism(2)
    assert [l.fiber_genus for l in b.boundaries] == [2, 1]


def test_reversed_core():
    r = reversed_block(core())
    assert r.chi == 1 and r.sigma_claimed == -1
    assert r.boundaries[0].monodromy == sl2z.classify(sl2z.invert(phi))


def test_blocks_certified_attributes():
    for b in (core(), splitter(), connector(ta), cap(), six_cap(), twist_cobordism(3), genus_three_bundle()):
        assert b.aspherical_certified and b.pi1_injective_certified


def test_glueable_examples():
    assert labels_glueable(BoundaryLabel.torus(ta), BoundaryLabel.torus(sl2z.invert(ta)))
    assert labels_glueable(BoundaryLabel.torus(phi), BoundaryLabel.torus(sl2z.invert(phi)))
    assert not labels_glueable(BoundaryLabel.torus(ta), BoundaryLabel.torus(ta))
    # -F(m) glues to F(m)
    assert labels_glueable(BoundaryLabel.torus(ta), BoundaryLabel.torus(ta, -1))
    # genus mismatch
    assert not labels_glueable(BoundaryLabel.torus(ta), twist_cobordism(2).boundaries[0])


def test_bundle_product_condition():
    assert monodromy_product_is_identity([sl2z.invert(phi), ta, tb, ta])
    with pytest.raises(ValueError):
        torus_bundle_over_punctured_sphere([ta, ta])


def test_build_block_roundtrip_and_strict_params():
    for b in (core(), splitter(), connector(phi), cap(), six_cap(), twist_cobordism(4), genus_three_bundle()):
        params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in b.parameters}
        assert build_block(b.kind.value, params) == b
    with pytest.raises(ValueError):
        build_block("core", {"psi": [1, 0, 0, 1]})
    with pytest.raises(ValueError):
        build_block("connector", {})
    with pytest.raises(ValueError):
        build_block("nonsense")


@given(sl2z_matrices(8), sl2z_matrices(8))
def test_glueable_symmetric(A, B):
    for s in (1, -1):
        for t in (1, -1):
            l1, l2 = BoundaryLabel.torus(A, s), BoundaryLabel.torus(B, t)
            assert labels_glueable(l1, l2) == labels_glueable(l2, l1)


@given(sl2z_matrices(8), st.sampled_from([1, -1]))
def test_reverse_label_glues_to_original_inverse(A, s):
    l = BoundaryLabel.torus(A, s)
    assert l.reverse().reverse() == l
    # a label always glues to its orientation-flipped copy
    assert labels_glueable(l, BoundaryLabel(1, l.monodromy, -s))


def test_reversal_involution_500():
    rng = random.Random(11)
    for _ in range(500):
        b = random_block(rng)
        r = reversed_block(b)
        assert r.chi == b.chi
        assert r.sigma_claimed == (None if b.sigma_claimed is None else -b.sigma_claimed)
        assert reversed_block(r) == b
        for l, lr in zip(b.boundaries, r.boundaries):
            assert lr.effective == l.reverse().effective


def test_kind_names():
    assert {k.value for k in BlockKind} >= {"core", "splitter", "connector", "cap", "six_cap", "custom"}
    assert reversed_block(cap()).name == "-Cap"
