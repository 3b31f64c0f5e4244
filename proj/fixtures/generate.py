#!/usr/bin/env python3
"""Transcribe the worked examples into fixture files.

Every expected value is typed in by hand below and expanded with sympy, so
the fixtures do not depend on the C++ library. Run from anywhere:

    python3 fixtures/generate.py
"""

import json
import pathlib

import sympy as sp

OUT = pathlib.Path(__file__).resolve().parent

y = sp.Symbol("y")


def syms(names):
    return sp.symbols(names)


T1, T2, T3, T4 = syms("T1 T2 T3 T4")
P1, P2, P3 = syms("P1 P2 P3")
Q1, Q2 = syms("Q1 Q2")


def rational(c):
    c = sp.Rational(c)
    return {"num": str(c.p), "den": str(c.q)}


def laurent_terms(expr):
    """Canonical term list of a Laurent polynomial."""
    expr = sp.expand(expr)
    if expr == 0:
        return []
    num, den = sp.fraction(sp.together(expr))
    den_poly = sp.Poly(den, *sorted(den.free_symbols, key=str)) if den.free_symbols else None
    if den_poly is not None and len(den_poly.terms()) != 1:
        raise ValueError(f"not a Laurent polynomial: {expr}")
    den_exps = {}
    den_coeff = den
    if den_poly is not None:
        (mon, den_coeff), = den_poly.terms()
        den_exps = {str(s): e for s, e in zip(den_poly.gens, mon)}
    gens = sorted(num.free_symbols | set(sp.Symbol(k) for k in den_exps), key=str)
    if not gens:
        return [{"exponents": {}, **rational(num / den_coeff)}]
    out = []
    for mon, c in sp.Poly(sp.expand(num), *gens).terms():
        exps = {}
        for g, e in zip(gens, mon):
            e = e - den_exps.get(str(g), 0)
            if e:
                exps[str(g)] = e
        out.append({"exponents": dict(sorted(exps.items())), **rational(c / den_coeff)})
    out.sort(key=lambda t: json.dumps(t["exponents"], sort_keys=True))
    return out


def localized(expr, qvars):
    """{"numerator", "denominator"} with the denominator a product of (1 - Q_j) powers."""
    expr = sp.cancel(sp.together(expr))
    num, den = sp.fraction(expr)
    denominator = {}
    rest = sp.Integer(1)
    for f, m in sp.factor_list(den)[1]:
        matched = False
        for q in qvars:
            if sp.expand(f - (1 - q)) == 0:
                denominator[str(q)] = m
                matched = True
            elif sp.expand(f - (q - 1)) == 0:
                denominator[str(q)] = m
                num = num * (-1) ** m
                matched = True
        if not matched:
            rest *= f**m
    rest *= sp.factor_list(den)[0]
    return {"numerator": laurent_terms(num / rest), "denominator": dict(sorted(denominator.items()))}


def y_coefficients(expr, top):
    p = sp.expand(expr)
    return [p.coeff(y, k) for k in range(1, top + 1)]


def lam(gens):
    return 1 + sum(g * y ** (i + 1) for i, g in enumerate(gens))


fixtures = []


def add(fid, shape, kind, anchor, display, expected, params=None):
    rec = {"id": fid, "shape": shape, "kind": kind, "anchor": anchor, "display": display}
    if params:
        rec["params"] = params
    rec["expected"] = expected
    fixtures.append(rec)


# Projective line: Toda relations in the P coordinates; GL form keeps P2.
add(
    "p1-toda",
    "1;2",
    "toda_relations",
    "p1-toda",
    ["P1 + (1-Q1) P2/P1 = T1 + T2", "P2 = T1 T2"],
    {"relations": [localized(P1 + (1 - Q1) * P2 / P1 - T1 - T2, [Q1]), localized(P2 - T1 * T2, [Q1])]},
)
# same relations after P2 -> 1 and T1 T2 -> 1
add(
    "p1-toda-sl",
    "1;2",
    "toda_relations",
    "p1-toda",
    ["P1 + (1-Q1)/P1 = T1 + 1/T1"],
    {"relations": [localized(P1 + (1 - Q1) / P1 - T1 - 1 / T1, [Q1])]},
    {"sl": True},
)

add(
    "fl3-toda",
    "1,2;3",
    "toda_relations",
    "fl3-toda",
    [
        "P1 + (1-Q1) P2/P1 + (1-Q2) P3/P2 = e1(T)",
        "P2 + (1-Q1) P3/P1 + (1-Q2) P1 P3/P2 = e2(T)",
        "P3 = e3(T)",
    ],
    {
        "relations": [
            localized(P1 + (1 - Q1) * P2 / P1 + (1 - Q2) * P3 / P2 - (T1 + T2 + T3), [Q1, Q2]),
            localized(P2 + (1 - Q1) * P3 / P1 + (1 - Q2) * P1 * P3 / P2 - (T1 * T2 + T1 * T3 + T2 * T3), [Q1, Q2]),
            localized(P3 - T1 * T2 * T3, [Q1, Q2]),
        ]
    },
)

# Whitney relations. Line bundles and ranks: S1 -> eX1_1, quotients -> eY.
X11, Y11 = syms("eX1_1 eY1_1")
lhs = lam([X11]) * lam([Y11]) - lam([T1 + T2, T1 * T2]) + y * Q1 / (1 - Q1) * Y11 * (lam([X11]) - 1)
add(
    "p1-whitney",
    "1;2",
    "whitney_relations",
    "p1-whitney",
    ["lambda_y(S1) * lambda_y(C2/S1) = lambda_y(C2) - y Q/(1-Q) (C2/S1) * (lambda_y(S1) - 1)"],
    {"relations": [localized(c, [Q1]) for c in y_coefficients(lhs, 2)]},
)

X21, X22, Y21 = syms("eX2_1 eX2_2 eY2_1")
e3 = [T1 + T2 + T3, T1 * T2 + T1 * T3 + T2 * T3, T1 * T2 * T3]
first = lam([X11]) * lam([Y11]) - lam([X21, X22]) + y * Q1 / (1 - Q1) * Y11 * (lam([X11]) - 1)
second = lam([X21, X22]) * lam([Y21]) - lam(e3) + y * Q2 / (1 - Q2) * Y21 * (lam([X21, X22]) - lam([X11]))
add(
    "fl3-whitney",
    "1,2;3",
    "whitney_relations",
    "fl3-whitney",
    [
        "lambda_y(S1) * lambda_y(S2/S1) = lambda_y(S2) - y Q1/(1-Q1) S2/S1 * (lambda_y(S1) - 1)",
        "lambda_y(S2) * lambda_y(C3/S2) = lambda_y(C3) - y Q2/(1-Q2) C3/S2 * (lambda_y(S2) - lambda_y(S1))",
    ],
    {"relations": [localized(c, [Q1, Q2]) for c in y_coefficients(first, 2) + y_coefficients(second, 3)]},
)

# Gr(2,4) representatives: e1 = eX1_1, e2 = eX1_2 are the classes of S and its determinant.
E1, E2 = syms("eX1_1 eX1_2")


def lam_minus_one(chi):
    return 1 - chi * E1 + chi**2 * E2


reps = {
    "(2,2)": lam_minus_one(1 / T1) * lam_minus_one(1 / T2),
    "(2,1)": lam_minus_one(1 / T1) * (1 - E2 / (T2 * T3)),
    "(2)": 1 - (1 / (T1 * T2) + 1 / (T2 * T3) + 1 / (T1 * T3)) * E2 + E1 * E2 / (T1 * T2 * T3),
    "(1,1)": lam_minus_one(1 / T1),
    "(1)": 1 - E2 / (T1 * T2),
    "()": sp.Integer(1),
}
chain = {"(2,2)": [], "(2,1)": [2], "(2)": [2, 1], "(1,1)": [2, 3], "(1)": [2, 3, 1], "()": [2, 3, 1, 2]}
for part, expr in reps.items():
    add(
        "gr24-rep-" + (part.strip("()").replace(",", "") or "empty"),
        "2;4",
        "representative",
        "gr24-representatives",
        [f"O^{part}"],
        {"polynomial": laurent_terms(expr)},
        {"partition": part, "word": chain[part]},
    )

# lambda_y(S) expanded in the Schubert basis
lam_S = lam([E1, E2])
add(
    "gr24-lambda-y",
    "2;4",
    "product_expansion",
    "gr24-lambda-y",
    ["lambda_y(S) = (1+yT1)(1+yT2) O^() - yT2(1+yT1) O^(1) - yT1 O^(1,1)"],
    {
        "coefficients": {
            "()": laurent_terms((1 + y * T1) * (1 + y * T2)),
            "(1)": laurent_terms(-y * T2 * (1 + y * T1)),
            "(1,1)": laurent_terms(-y * T1),
        }
    },
    {"a": {"polynomial": laurent_terms(lam_S)}, "b": "()"},
)

add(
    "gr24-point",
    "2;4",
    "product_expansion",
    "gr24-point",
    ["lambda_{-1}(e^{-eps2} S) * lambda_{-1}(e^{-eps1} S) = O^(2,2)"],
    {"coefficients": {"(2,2)": laurent_terms(sp.Integer(1))}},
    {
        "a": {"polynomial": laurent_terms(lam_minus_one(1 / T2))},
        "b": {"polynomial": laurent_terms(lam_minus_one(1 / T1))},
    },
)

r32 = T3 / T2
r31 = T3 / T1
r21 = T2 / T1
products = [
    (
        "gr24-product-1-1",
        "(1)",
        "(1)",
        {"(1)": 1 - r32, "(2)": r32, "(1,1)": r32, "(2,1)": -r32},
    ),
    ("gr24-product-1-11", "(1)", "(1,1)", {"(1,1)": 1 - r31, "(2,1)": r31}),
    (
        "gr24-product-11-11",
        "(1,1)",
        "(1,1)",
        {
            "(1,1)": T3 * T2 / T1**2 - r31 - r21 + 1,
            "(2,1)": -T3 * T2 / T1**2 + r31,
            "(2,2)": r21,
        },
    ),
]
for fid, a, b, coeffs in products:
    add(
        fid,
        "2;4",
        "product_expansion",
        "gr24-products",
        [f"O^{a} * O^{b}"],
        {"coefficients": {k: laurent_terms(v) for k, v in coeffs.items()}},
        {"a": a, "b": b},
    )

add(
    "p1-symbol",
    "1;2",
    "symbol",
    "toda-symbols",
    ["symbol of hat H_1 for n = 2: P1 + (1-Q1) P2/P1"],
    {"symbol": localized(P1 + (1 - Q1) * P2 / P1, [Q1])},
    {"n": 2, "k": 1},
)
fl3_symbols = [
    P1 + (1 - Q1) * P2 / P1 + (1 - Q2) * P3 / P2,
    P2 + (1 - Q1) * P3 / P1 + (1 - Q2) * P1 * P3 / P2,
    P3,
]
for k, s in enumerate(fl3_symbols, start=1):
    add(
        f"fl3-symbol-{k}",
        "1,2;3",
        "symbol",
        "toda-symbols",
        [f"symbol of hat H_{k} for n = 3"],
        {"symbol": localized(s, [Q1, Q2])},
        {"n": 3, "k": k},
    )

manifest = {
    "anchors": [
        {"slug": "p1-toda", "description": "Toda relations of the projective line after the P substitution"},
        {"slug": "fl3-toda", "description": "Toda relations of the full flags of C^3 after the P substitution"},
        {"slug": "p1-whitney", "description": "Whitney relation of the projective line"},
        {"slug": "fl3-whitney", "description": "the two Whitney relations of the full flags of C^3"},
        {"slug": "gr24-representatives", "description": "Schubert representatives of Gr(2,4) from the divided difference chain"},
        {"slug": "gr24-lambda-y", "description": "lambda_y of the tautological bundle of Gr(2,4) in the Schubert basis"},
        {"slug": "gr24-point", "description": "point class of Gr(2,4) as a product of two lambda classes"},
        {"slug": "gr24-products", "description": "three products of Schubert classes of Gr(2,4)"},
        {"slug": "toda-symbols", "description": "symbols of the Toda Hamiltonians"},
    ],
    "files": ["examples.json"],
}

(OUT / "examples.json").write_text(json.dumps({"fixtures": fixtures}, indent=1) + "\n")
(OUT / "MANIFEST.json").write_text(json.dumps(manifest, indent=1) + "\n")
print(f"wrote {len(fixtures)} fixtures")
