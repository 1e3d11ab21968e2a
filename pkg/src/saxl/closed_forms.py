"""Closed formulas for valencies and subdegree multiplicities of specific families.

All arithmetic is exact (``Fraction``) and every quantity that must be an
integer is checked to be one; a failure raises ``FormulaError``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import SubdegreeReport, make_report
from .numtheory import (
    divisors,
    euler_phi,
    factorize,
    is_prime,
    is_prime_power,
    mobius,
    multiplicative_order,
    zsigmondy_primitive_prime,
)

__all__ = [
    "FormulaError",
    "FrobeniusInput",
    "FamilyParams",
    "frobenius_valency",
    "frobenius_multiplicities",
    "frobenius_report",
    "sym_normalizer_orders",
    "alt_normalizer_orders",
    "sym_frobenius_input",
    "alt_frobenius_input",
    "val_sym_p",
    "val_alt_p",
    "mult_sym_p",
    "mult_alt_p",
    "val_psl2",
    "val_pgl2",
    "PrimePowerVerdict",
    "classify_prime_power_stabiliser",
    "odd_valency_verdict",
    "LrEpsParams",
    "lr_eps_params",
    "lr_eps_subdegrees",
    "singer_central_normalizer_order",
    "ALT_NON_MAXIMAL",
]

ALT_NON_MAXIMAL = (7, 11, 17, 23)


class FormulaError(ValueError):
    """Parameters outside a formula's range, or a non-integral/negative result."""


def _int(x, what: str) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise FormulaError(f"{what} is not an integer: {x}")
    return int(x)


def _check_sign(eps) -> int:
    if eps in ("+", 1, "+1"):
        return 1
    if eps in ("-", -1, "-1"):
        return -1
    raise FormulaError(f"eps must be + or -, got {eps!r}")


# ---------------------------------------------------------------------------
# Frobenius stabiliser with cyclic kernel


@dataclass
class FrobeniusInput:
    """H = K:L Frobenius with |K| = k cyclic and L = <y> of order l.

    ``normalizer_orders[d]`` is |N_G(S_d)| for the subgroup S_d = <y^(l/d)> of
    order d, for every divisor d > 1 of l.
    """

    k: int
    l: int
    normalizer_orders: dict
    index: int

    def __post_init__(self):
        if self.k < 2 or self.l < 1:
            raise FormulaError("need a nontrivial kernel and complement")
        if math.gcd(self.k, self.l) != 1:
            raise FormulaError(f"gcd(|K|, |L|) = gcd({self.k}, {self.l}) != 1")
        self.normalizer_orders = {int(d): int(v) for d, v in self.normalizer_orders.items()}
        for d in divisors(self.l):
            if d == 1:
                continue
            if d not in self.normalizer_orders:
                raise FormulaError(f"missing normaliser order for the subgroup of order {d}")
            if self.normalizer_orders[d] % self.l:
                raise FormulaError(f"normaliser order {self.normalizer_orders[d]} not divisible by |L| = {self.l}")

    @property
    def order_H(self) -> int:
        return self.k * self.l


def frobenius_valency(inp: FrobeniusInput) -> int:
    k, l, N = inp.k, inp.l, inp.normalizer_orders
    s = sum(mobius(d) * N[d] for d in divisors(l) if d > 1)
    return _int(inp.index + k - 1 + Fraction(k * s, l), "Frobenius valency")


def frobenius_multiplicities(inp: FrobeniusInput) -> list:
    """[(d*k, m)] for the proper divisors d of l."""
    k, l, N = inp.k, inp.l, inp.normalizer_orders
    out = []
    for d in divisors(l):
        if d == l:
            continue
        if d == 1:
            m = Fraction(N[l] - l, l) if l > 1 else Fraction(0)
        else:
            m = Fraction(sum(mobius(e) * N[l * e // d] for e in divisors(d)), d * l)
        m = _int(m, f"multiplicity of subdegree {d * k}")
        if m < 0:
            raise FormulaError(f"negative multiplicity {m} at subdegree {d * k}")
        out.append((d * k, m))
    return out


def frobenius_report(inp: FrobeniusInput, name: str = "", order_G: int | None = None) -> SubdegreeReport:
    val = frobenius_valency(inp)
    h = inp.order_H
    counts = {1: 1}
    for n, m in frobenius_multiplicities(inp):
        counts[n] = counts.get(n, 0) + m
    counts[h] = counts.get(h, 0) + _int(Fraction(val, h), "regular multiplicity")
    order_G = inp.index * h if order_G is None else order_G
    return make_report(name, order_G, h, inp.index, counts, "closed-form")


# ---------------------------------------------------------------------------
# S_p and A_p on the cosets of AGL_1(p) (resp. its even part)


def _check_p(p: int) -> None:
    if not is_prime(p) or p <= 5:
        raise FormulaError(f"p must be a prime > 5, got {p}")


def sym_normalizer_orders(p: int) -> dict:
    """|N_{S_p}(<y^(l/d)>)| for y a (p-1)-cycle: phi(d) d^((p-1)/d) ((p-1)/d)!."""
    return {d: euler_phi(d) * d ** ((p - 1) // d) * math.factorial((p - 1) // d) for d in divisors(p - 1) if d > 1}


def alt_normalizer_orders(p: int) -> dict:
    """Half of the symmetric-group values, over the divisors of (p-1)/2."""
    return {
        d: euler_phi(d) * d ** ((p - 1) // d) * math.factorial((p - 1) // d) // 2
        for d in divisors((p - 1) // 2)
        if d > 1
    }


def sym_frobenius_input(p: int) -> FrobeniusInput:
    _check_p(p)
    return FrobeniusInput(p, p - 1, sym_normalizer_orders(p), math.factorial(p - 2))


def alt_frobenius_input(p: int) -> FrobeniusInput:
    _check_p(p)
    return FrobeniusInput(p, (p - 1) // 2, alt_normalizer_orders(p), math.factorial(p - 2))


def _agl_sum(p: int, top: int) -> int:
    return sum(
        mobius(d) * euler_phi(d) * d ** ((p - 1) // d - 1) * math.factorial((p - 1) // d - 1)
        for d in divisors(top)
        if d > 1
    )


def val_sym_p(p: int) -> int:
    _check_p(p)
    return math.factorial(p - 2) + p - 1 + p * _agl_sum(p, p - 1)


def val_alt_p(p: int) -> int:
    _check_p(p)
    if p in ALT_NON_MAXIMAL:
        warnings.warn(
            f"AGL_1({p}) ∩ A_{p} is not maximal in A_{p}; the formula value need not be the valency",
            stacklevel=2,
        )
    return math.factorial(p - 2) + p - 1 + p * _agl_sum(p, (p - 1) // 2)


def mult_sym_p(p: int, d: int) -> int:
    """Number of suborbits of length d*p, d a proper divisor of p - 1."""
    _check_p(p)
    if d < 1 or (p - 1) % d or d == p - 1:
        raise FormulaError(f"d = {d} is not a proper divisor of {p - 1}")
    if d == 1:
        return euler_phi(p - 1) - 1
    s = 0
    for e in divisors(d):
        t = (p - 1) * e // d
        s += mobius(e) * euler_phi(t) * t ** (d // e) * math.factorial(d // e)
    return _int(Fraction(s, d * (p - 1)), "multiplicity")


def mult_alt_p(p: int, d: int) -> int:
    """Number of suborbits of length d*p, d a proper divisor of (p - 1)/2."""
    _check_p(p)
    h = (p - 1) // 2
    if d < 1 or h % d or d == h:
        raise FormulaError(f"d = {d} is not a proper divisor of {h}")
    if d == 1:
        return euler_phi(h) * h - 1
    s = 0
    for e in divisors(d):
        t = (p - 1) * e // (2 * d)
        s += mobius(e) * euler_phi(t) * t ** (2 * d // e) * math.factorial(2 * d // e)
    return _int(Fraction(s, d * (p - 1)), "multiplicity")


# ---------------------------------------------------------------------------
# two-dimensional groups with dihedral stabiliser


def _check_prime_power(q: int) -> None:
    if not is_prime_power(q):
        raise FormulaError(f"{q} is not a prime power")


def val_psl2(q: int, case: str) -> int:
    """PSL_2(q), q odd, on the cosets of D_(q-1) (split) or D_(q+1) (nonsplit)."""
    _check_prime_power(q)
    if q % 2 == 0:
        raise FormulaError("q must be odd")
    if case == "split":
        if q < 13:
            raise FormulaError("split case needs q >= 13")
        return (q - 1) * (q + 7) // 4 if q % 4 == 1 else (q - 1) * (q + 5) // 4
    if case == "nonsplit":
        if q < 11:
            raise FormulaError("nonsplit case needs q >= 11")
        return (q + 1) * (q - 1) // 4 if q % 4 == 1 else (q + 1) * (q - 3) // 4
    raise FormulaError(f"unknown case {case!r}")


def val_pgl2(q: int, case: str) -> int:
    """PGL_2(q) on the cosets of D_2(q-1) (Johnson graph J(q+1,2)) or D_2(q+1) (no regular suborbit)."""
    _check_prime_power(q)
    if q < 7:
        raise FormulaError("need q >= 7")
    if case == "split":
        return 2 * (q - 1)
    if case == "nonsplit":
        return 0
    raise FormulaError(f"unknown case {case!r}")


# ---------------------------------------------------------------------------
# stabilisers of prime-power order


def _fermat_exponent(p: int):
    f = (p - 1).bit_length() - 1
    return f if is_prime(p) and p - 1 == 1 << f else None


def _mersenne_exponent(p: int):
    f = (p + 1).bit_length() - 1
    return f if is_prime(p) and p + 1 == 1 << f else None


@dataclass
class PrimePowerVerdict:
    family: str
    params: dict
    row: str | None
    valency: int | None
    prime_power: bool | None
    reason: str = ""

    @property
    def accepted(self) -> bool:
        return self.row is not None


def _pp(v: int | None):
    return None if v is None else is_prime_power(v)


def classify_prime_power_stabiliser(family: str, params: dict | None = None) -> PrimePowerVerdict:
    """Match (G, H) against the almost simple cases with |H| a prime power.

    Families: PSL2-split, PSL2-nonsplit, PGL2-split, PGL2-nonsplit (params p),
    PGL2(9), M10, PGammaL2(9), and LrEps (params r, q, eps), which never
    has a stabiliser of prime-power order.
    """
    params = dict(params or {})
    fam = family
    if fam in ("PSL2-split", "PSL2-nonsplit", "PGL2-split", "PGL2-nonsplit"):
        p = int(params.get("p", params.get("q", 0)))
        split = fam.endswith("-split")
        exp = _fermat_exponent(p) if split else _mersenne_exponent(p)
        kind = "Fermat" if split else "Mersenne"
        if fam.startswith("PSL2"):
            lower = 17 if split else 31
            hname = f"D_{p - 1 if split else p + 1}"
            if exp is None or p < lower:
                return PrimePowerVerdict(fam, params, None, None, None, f"{p} is not a {kind} prime >= {lower}")
            val = val_psl2(p, "split" if split else "nonsplit")
            row = f"L2(p), {hname}, p >= {lower} a {kind} prime"
        else:
            lower = 17 if split else 7
            hname = f"D_{2 * (p - 1) if split else 2 * (p + 1)}"
            if exp is None or p < lower:
                return PrimePowerVerdict(fam, params, None, None, None, f"{p} is not a {kind} prime >= {lower}")
            val = val_pgl2(p, "split" if split else "nonsplit")
            row = f"PGL2(p), {hname}, p >= {lower} a {kind} prime"
        return PrimePowerVerdict(fam, params, row, val, _pp(val) if val else False, f"{kind} exponent f = {exp}")
    if fam == "PGL2(9)":
        return PrimePowerVerdict(fam, params, "PGL2(9), D_16", 16, True, "Johnson graph J(10,2)")
    if fam == "M10":
        return PrimePowerVerdict(fam, params, "M10, 8:2", 32, True, "")
    if fam == "PGammaL2(9)":
        val = params.get("valency")
        val = None if val is None else int(val)
        return PrimePowerVerdict(fam, params, "PGammaL2(9), 8:2^2", val, False if val is None else _pp(val) if val else False, "not a prime-power valency case")
    if fam in ("LrEps", "LrEps-socle"):
        r, q = int(params["r"]), int(params["q"])
        eps = _check_sign(params.get("eps", "+"))
        a = lr_eps_params(r, q, eps).a_reduced
        s = zsigmondy_primitive_prime(q, r, eps)
        if is_prime_power(a * r):
            reason = f"a*r = {a * r} is a prime power (Zsigmondy exception)"
        else:
            reason = f"a*r = {a * r} is not a prime power" + (f"; primitive prime divisor {s}" if s else "")
        return PrimePowerVerdict(fam, params, None, None, None, reason)
    raise FormulaError(f"unknown family {family!r}")


def odd_valency_verdict(family: str, params: dict | None = None) -> dict:
    """Parity of the valency where a closed form exists, and whether odd valency is allowed."""
    params = dict(params or {})
    val = None
    if family == "Sp":
        val = val_sym_p(int(params["p"]))
    elif family == "Ap":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            val = val_alt_p(int(params["p"]))
    elif family.startswith("PSL2-"):
        val = val_psl2(int(params["q"]), family.split("-", 1)[1])
    elif family.startswith("PGL2-"):
        val = val_pgl2(int(params["q"]), family.split("-", 1)[1])
    elif family in ("LrEps", "LrEps-socle"):
        val = lr_eps_subdegrees(int(params["r"]), int(params["q"]), params.get("eps", "+"),
                                "socle" if family.endswith("socle") else "full").valency
    allowed = family in ("M23", "LrEps-extension")
    return {
        "family": family,
        "valency": val,
        "odd": None if val is None else val % 2 == 1,
        "odd_allowed": allowed,
    }


# ---------------------------------------------------------------------------
# Singer normalisers Z_a:Z_r in PGL^eps_r(q)


def order_pgl(r: int, q: int, eps: int = 1) -> int:
    order = q ** (r * (r - 1) // 2)
    for i in range(2, r + 1):
        order *= q**i - eps**i
    return order


@dataclass
class LrEpsParams:
    r: int
    q: int
    eps: int
    a_reduced: int  # (q^r - eps)/((q - eps)(r, q - eps)), the order of H ∩ socle over r
    a_singer: int  # (q^r - eps)/(q - eps), the Singer cycle order in PGL
    k: int | None
    N: int
    order_G: int
    order_socle: int
    gcd: int = field(default=1)

    @property
    def a(self) -> int:
        return self.a_singer

    @property
    def order_H(self) -> int:
        return self.a_singer * self.r

    @property
    def index(self) -> int:
        return self.order_G // self.order_H


def FamilyParams(family: str, **params) -> dict:
    """Validated parameter record for a family tag."""
    fam = family
    if fam in ("Sp", "Ap"):
        _check_p(int(params["p"]))
    elif fam.startswith(("PSL2", "PGL2")):
        _check_prime_power(int(params["q"]))
    elif fam.startswith("LrEps"):
        lr_eps_params(int(params["r"]), int(params["q"]), params.get("eps", "+"))
    else:
        raise FormulaError(f"unknown family {family!r}")
    return {"family": fam, **params}


def lr_eps_params(r: int, q: int, eps=1) -> LrEpsParams:
    eps = _check_sign(eps)
    if not is_prime(r) or r == 2:
        raise FormulaError("r must be an odd prime")
    _check_prime_power(q)
    g = math.gcd(r, q - eps)
    a_singer = (q**r - eps) // (q - eps)
    a_reduced = a_singer // g
    k = multiplicative_order(q, r) if q % r else None
    if q % r == 0:
        N = (r - 1) * q ** (r - 1)
    elif g == r:
        N = r * (r - 1) * (q - eps) ** (r - 1)
    elif eps == 1 or k % 4 == 0:
        N = (r - 1) * (q**k - 1) ** ((r - 1) // k)
    elif k % 4 == 2:
        N = (r - 1) * (q ** (k // 2) + 1) ** ((2 * r - 2) // k)
    else:
        N = (r - 1) * (q ** (2 * k) - 1) ** ((r - 1) // (2 * k))
    order_G = order_pgl(r, q, eps)
    return LrEpsParams(r, q, eps, a_reduced, a_singer, k, N, order_G, order_G // g, g)


def lr_eps_subdegrees(r: int, q: int, eps=1, variant: str = "full") -> SubdegreeReport:
    """Subdegrees of PGL^eps_r(q) (or its socle) on the cosets of the Singer normaliser."""
    P = lr_eps_params(r, q, eps)
    a, h, idx, N = P.a_singer, P.order_H, P.index, P.N
    e = P.eps
    name = f"L{r}{'+' if e == 1 else '-'}({q})/{variant}"
    if variant not in ("full", "socle"):
        raise FormulaError(f"unknown variant {variant!r}")
    if P.gcd == 1:
        val = _int(idx + a - 1 - Fraction(a * N, r), "valency")
        counts = {1: 1, h: _int(Fraction(val, h), "regular multiplicity")}
        counts[h // r] = counts.get(h // r, 0) + _int(Fraction(N - r, r), "multiplicity")
        order_G, order_H = P.order_G, h
    elif variant == "full":
        val = _int(
            idx - Fraction(h, r**3) * (r - 1) * ((r - 1) * (Fraction(h, r) - r) + (q - e) ** (r - 1))
            + Fraction(h, r**2) - 1,
            "valency",
        )
        m_a = _int(Fraction(r * (r - 1) * (q - e) ** (r - 1) - r**4 + r**3 - r**2 + (r - 1) ** 2 * h, r**3), "m(a)")
        counts = {1: 1, h: _int(Fraction(val, h), "regular multiplicity"), a: m_a, a // r: r - 1}
        order_G, order_H = P.order_G, h
    else:
        # socle: H ∩ soc = Z_(a/r):Z_r Frobenius, |H ∩ soc| = a
        h0 = a
        m_small = _int(Fraction((r - 1) * (q - e) ** (r - 1) - r, r), "m(a/r)")
        val = _int(idx + Fraction(h0, r) - 1 - Fraction(h0, r**2) * (r - 1) * (q - e) ** (r - 1), "valency")
        counts = {1: 1, h0: _int(Fraction(val, h0), "regular multiplicity"), h0 // r: m_small}
        order_G, order_H = P.order_socle, h0
    if any(m < 0 for m in counts.values()):
        raise FormulaError(f"negative multiplicity in {counts}")
    total = sum(n * m for n, m in counts.items())
    if total != idx:
        raise FormulaError(f"sum rule fails: {total} != {idx}")
    return make_report(name, order_G, order_H, idx, counts, "closed-form")


def singer_central_normalizer_order(r: int, q: int, eps=1) -> int:
    """|N_G(<x, sigma>)| = r^3 when r divides q - eps."""
    eps = _check_sign(eps)
    if (q - eps) % r:
        raise FormulaError(f"{r} does not divide q - eps = {q - eps}")
    return r**3
