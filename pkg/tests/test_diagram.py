"""Diagram constructors, smoothing, involution, superposition, and JSON I/O."""

import json
from fractions import Fraction

import pytest

from kbracket.diagram import (
    SM0,
    SMINF,
    diagram_from_json,
    diagram_to_json,
    empty_diagram,
    from_braid,
    kink_chain,
    load_diagram,
    promote_real,
    resolve,
    save_diagram,
    sl2z_act,
    smooth,
    superpose,
    tau,
    torus_multicurve,
)
from kbracket.errors import (
    BadGenerator,
    NotUnimodular,
    StateOutsideMarkedSet,
    UnsupportedSuperposition,
)
from kbracket.statesum import bracket
from kbracket.surface import ANNULUS_SURFACE, TORUS_SURFACE


def test_from_braid_shape():
    d = from_braid(3, [1, -2, 1])
    assert d.num_crossings() == 3
    assert d.is_real()
    assert d.surface == ANNULUS_SURFACE
    with pytest.raises(BadGenerator):
        from_braid(2, [2])


def test_untouched_strand_becomes_free_loop():
    d = from_braid(3, [1])
    # strand 3 is never crossed: carried as a winding-1 free loop
    assert len(d.free_loops) == 1


def test_smooth_reduces_and_checks_marking():
    d = from_braid(2, [1, 1])
    cids = sorted(d.crossings)
    d0 = smooth(d, {cids[0]: SM0})
    assert d0.num_crossings() == 1
    assert cids[0] not in d0.crossings
    outside = smooth(d, {cids[0]: SM0})
    with pytest.raises(StateOutsideMarkedSet):
        smooth(outside, {cids[0]: SMINF})


def test_resolve_counts_kink():
    d = kink_chain(2)
    cids = sorted(d.crossings)
    zeta, iota, mu, ess = resolve(d, {c: SMINF for c in cids})
    assert (zeta, iota) == (0, 2)
    assert mu == 3 and ess.is_empty()  # each kink loop plus the main circle
    zeta, iota, mu, ess = resolve(d, {c: SM0 for c in cids})
    assert (zeta, iota) == (2, 0)
    assert mu == 1


def test_tau_is_an_involution_up_to_port_rotation():
    d = from_braid(2, [1, 1, 1])
    # structurally tau^2 rotates every crossing by half a turn, which is
    # the same diagram semantically
    assert bracket(tau(tau(d))) == bracket(d)
    # crossing flip exchanges the roles of the two smoothings
    cids = sorted(d.crossings)
    a = resolve(d, {c: SM0 for c in cids})
    b = resolve(tau(d), {c: SMINF for c in cids})
    assert a[2:] == b[2:] and (a[0], a[1]) == (b[1], b[0])


def test_superpose_torus_crossing_count():
    d = superpose(torus_multicurve(1, 1, 0), torus_multicurve(1, 0, 1), "strong")
    assert d.num_crossings() == 1 and d.is_real()
    w = superpose(torus_multicurve(1, 1, 0), torus_multicurve(1, 0, 1), "weak")
    assert w.num_crossings() == 1 and not w.marked
    d2 = superpose(torus_multicurve(2, 1, 2), torus_multicurve(1, 1, -1), "strong")
    assert d2.num_crossings() == 2 * abs(1 * (-1) - 2 * 1)
    assert promote_real(w).is_real()


def test_superpose_parallel_is_crossingless():
    d = superpose(torus_multicurve(1, 1, 2), torus_multicurve(2, 1, 2), "strong")
    assert d.num_crossings() == 0
    with pytest.raises(UnsupportedSuperposition):
        superpose(from_braid(2, [1]), from_braid(2, [1]), "strong")


def test_sl2z_action_on_bracket_classes():
    m = ((1, 1), (0, 1))
    d = superpose(torus_multicurve(1, 1, 0), torus_multicurve(1, 0, 1), "strong")
    lhs = bracket(sl2z_act(m, d))
    rhs = bracket(d).map_classes(
        lambda c: c if c.is_empty() else _act(m, c)
    )
    assert lhs == rhs
    with pytest.raises(NotUnimodular):
        sl2z_act(((2, 0), (0, 1)), d)


def _act(m, cls):
    from kbracket.starprod import sl2z_class

    return sl2z_class(m, cls)


def test_offsets_do_not_change_bracket():
    a = superpose(torus_multicurve(1, 1, 0), torus_multicurve(1, 0, 1), "strong")
    b = superpose(
        torus_multicurve(1, 1, 0, offsets=(Fraction(1, 5),)),
        torus_multicurve(1, 0, 1, offsets=(Fraction(2, 7),)),
        "strong",
    )
    assert bracket(a) == bracket(b)


def test_json_round_trip(tmp_path):
    for d in (
        from_braid(3, [1, -2, 1, 1]),
        kink_chain(3),
        superpose(torus_multicurve(1, 1, 0), torus_multicurve(1, 0, 1), "weak"),
        empty_diagram(TORUS_SURFACE),
    ):
        data = diagram_to_json(d)
        json.dumps(data)  # serializable
        back = diagram_from_json(data)
        assert back == d
        path = tmp_path / "d.json"
        save_diagram(d, path)
        assert load_diagram(path) == d
        assert bracket(promote_real(back)) == bracket(promote_real(d))
