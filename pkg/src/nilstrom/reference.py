"""Reference values for the catalogued scenarios.

Two kinds of values live here:

``stated_*``
    Closed forms as they are quoted in the literature on these examples.
    They are used as oracles and are *not* assumed to be correct; the report
    layer compares against them and flags mismatches.
``derived_*``
    Closed forms obtained independently (hand computation from the
    structure equations, cross-checked by the dense numeric oracle in the
    test suite) and frozen here.

All functions are exact when their inputs are exact.
"""

from __future__ import annotations

from .exterior import REAL, Form
from .scalar import CQ, im_part, is_exact, re_part


def _real2(pairs) -> Form:
    """Linear combination of real 2-form monomials, ``pairs = [(coeff, "12"), ...]``."""
    acc = Form.zero(2, REAL)
    for c, lab in pairs:
        acc = acc + Form.monomial(lab, c, REAL)
    return acc


def _lift(x):
    return x if isinstance(x, (CQ, complex)) else CQ(x)


# curvature lists, 1-based (i, j) keys with i < j

def xs_curvature(s) -> dict:
    """Bismut curvature of ``(Xs, F_s)`` in the adapted real frame."""
    s = _lift(s)
    one = s / s
    a, b = 2 / s * one, one / (s * s)
    O = {}
    O[1, 2] = _real2([(-4, "12"), (4, "34"), (a, "14"), (a, "23"), (2 * b, "34")])
    O[1, 3] = O[2, 4] = _real2([(-b, "13"), (-b, "24")])
    O[1, 4] = _real2([(-b, "14"), (b, "23")])
    O[2, 3] = -O[1, 4]
    O[1, 5] = O[2, 6] = _real2([(-a, "46")])
    O[1, 6] = _real2([(a, "36")])
    O[2, 5] = -O[1, 6]
    O[3, 4] = _real2([(4, "12"), (-4, "34"), (-a, "14"), (-a, "23"), (2 * b, "12")])
    O[3, 5] = O[4, 6] = _real2([(-a, "26")])
    O[3, 6] = _real2([(a, "16")])
    O[4, 5] = -O[3, 6]
    O[5, 6] = _real2([(-2 * b, "12"), (-2 * b, "34")])
    return O


def h4_rho(abs_t, r):
    return abs_t ** 2 * (1 - abs_t ** 2) ** 2 / (r * r)


def h4_scaled_curvature(t, abs_t) -> dict:
    """The eight independent forms ``rho * Omega^i_j`` on ``H4Disk``."""
    t1, t2, m = re_part(t), im_part(t), abs_t
    if is_exact(t):
        t1, t2, m = CQ(t1), CQ(t2), _lift(m)
    m2 = m * m
    return {
        (1, 2): _real2([(-m2, "12"), (-t1 * m, "13"), (t1 * m, "24"), (-t2 * m, "14"), (-t2 * m, "23"),
                        (3 * m2, "34")]),
        (1, 3): _real2([(-m2, "13"), (-m2, "24"), (2 * m, "56")]),
        (1, 4): _real2([(-t2, "13"), (t2, "24"), (-(1 - t1 + m2), "14"), (1 + t1 + m2, "23")]),
        (1, 5): _real2([(-t2, "16"), (-t2 * m, "35"), (t1, "26"), (t1 * m, "45")]),
        (1, 6): _real2([(-t1, "16"), (-t1 * m, "35"), (-t2, "26"), (-t2 * m, "45")]),
        (3, 4): _real2([(3 * m2, "12"), (t1 * m, "13"), (-t1 * m, "24"), (t2 * m, "14"), (t2 * m, "23"),
                        (-m2, "34")]),
        (3, 5): _real2([(-t2 * m, "15"), (t2, "36"), (t1 * m, "25"), (-t1, "46")]),
        (3, 6): _real2([(-t1 * m, "15"), (t1, "36"), (-t2 * m, "25"), (t2, "46")]),
    }


# the seven relations completing the H4Disk list: target -> (sign, source) or a sum
H4_RELATIONS = {
    (2, 3): ((-1, (1, 4)),),
    (2, 4): ((1, (1, 3)),),
    (2, 5): ((-1, (1, 6)),),
    (2, 6): ((1, (1, 5)),),
    (4, 5): ((-1, (3, 6)),),
    (4, 6): ((1, (3, 5)),),
    (5, 6): ((-1, (1, 2)), (-1, (3, 4))),
}


def h4_curvature(t, abs_t, r) -> dict:
    """Full list on ``H4Disk``: the scaled forms divided by ``rho`` plus the relations."""
    rho = h4_rho(_lift(abs_t), _lift(r))
    O = {k: v / rho for k, v in h4_scaled_curvature(t, abs_t).items()}
    for key, terms in H4_RELATIONS.items():
        O[key] = sum((O[src] * sgn for sgn, src in terms), Form.zero(2, REAL))
    return O


# scalar closed forms; coefficients of w^1~1 2~2 (Xs) or eta^1~1 2~2 (H4Disk)

def stated_xs(s, r=1) -> dict:
    s, r = _lift(s), _lift(r)
    s2, s4, s6 = s ** 2, s ** 4, s ** 6
    return {
        "dT_coeff": r * r * (2 * s2 + 1) / s4,
        "trace_coeff": 4 * r ** 4 * (4 * s2 + 1) / s4,
        "trace_e1234": -16 * (4 * s2 + 1) / s6,
        "alpha_flat": (2 * s2 + 1) / (4 * (4 * s2 + 1)),
        "alpha_ccdlmz": 8 * r * r * (2 * s2 + 1) / (8 * r ** 4 * (4 * s2 + 1) - s6),
        "threshold_r4": s6 / (8 * (4 * s2 + 1)),
        "instanton_coeff": s2 / 2,
    }


def derived_xs(s, r=1) -> dict:
    s, r = _lift(s), _lift(r)
    s2 = s ** 2
    trace = 4 * r ** 4 * (4 * s2 + 1)
    return {
        "dT_coeff": r * r * (2 * s2 + 1),
        "trace_coeff": trace,
        # e^1234 = -(s^2/4) w^1~1 2~2 in the adapted frame
        "trace_e1234": -4 * trace / s2,
        "alpha_flat": (2 * s2 + 1) / (r * r * (4 * s2 + 1)),
        "alpha_ccdlmz": 8 * r * r * (2 * s2 + 1) / (8 * r ** 4 * (4 * s2 + 1) - s2),
        "threshold_r4": s2 / (8 * (4 * s2 + 1)),
        "instanton_coeff": s2 / 2,
    }


def stated_h4(abs_t, r=1) -> dict:
    m, r = _lift(abs_t), _lift(r)
    m2, m4 = m ** 2, m ** 4
    q = 1 - m2
    poly = 1 + m2 + 2 * m4
    return {
        "dT_coeff": r * r * (1 + 3 * m2) / (2 * q ** 2),
        "trace_coeff": r ** 4 * poly / (m2 * q ** 4),
        "trace_e1234": -4 * r ** 4 * poly / (m4 * q ** 4),
        "alpha_flat": 2 * m2 * (1 + 3 * m2) * q ** 2 / (r * r * poly),
        "alpha_ccdlmz": 4 * r * r * m2 * (1 + 3 * m2) * q ** 2 / (2 * r ** 4 * poly - m4 * q ** 4),
        "threshold_r4": m4 * q ** 4 / (2 * poly),
        "instanton_coeff": m2 / 2,
    }


__all__ = [
    "H4_RELATIONS",
    "derived_xs",
    "h4_curvature",
    "h4_rho",
    "h4_scaled_curvature",
    "stated_h4",
    "stated_xs",
    "xs_curvature",
]
