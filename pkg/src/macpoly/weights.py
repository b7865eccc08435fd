"""Weight distributions built from q-Pochhammer factors.

A weight is a product P * conj(P') of two positive-cone parts; the second
part is reflected into the negative cone (exponent flip), optionally with
q -> 1/q on its coefficients.  Finite specs expand to exact Laurent
polynomials; infinite specs are paired in the truncated-series backend
with explicit accounting of the v-order lost to truncation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .galg import GAElement
from .scalars import ExactScalar, SeriesScalar

INF = None  # length tag for infinite Pochhammer factors


@dataclass(frozen=True)
class PochFactor:
    """(coeff * e^exponent ; q^base_log)_length, on one side of a fraction."""

    coeff: ExactScalar
    exponent: tuple
    base_log: int
    length: object  # int >= 0 or INF
    side: int  # +1 numerator, -1 denominator

    def __post_init__(self):
        if self.base_log == 0:
            raise ValueError("Pochhammer base exponent must be nonzero")
        if self.length is INF and self.base_log < 0:
            raise ValueError("infinite factors need a positive base")

    def key(self):
        return (self.coeff, self.exponent, self.base_log, self.length)

    def to_json(self):
        return {"coeff": self.coeff.render(), "exponent": list(self.exponent),
                "base_log": self.base_log,
                "length": "inf" if self.length is INF else self.length,
                "side": self.side}


def _qpow(k):
    return ExactScalar.q_power(k)


class WeightSpec:
    """plus-part factors and a reflected second part, with a global scalar.

    `minus` lists factors in positive-cone form; the weight contains their
    image under e^mu -> e^-mu, with coefficients additionally sent through
    q -> 1/q when minus_conj == "bar_flip".
    """

    def __init__(self, plus, minus, lattice, heightfn, prefactor=None,
                 minus_conj="flip", tag="", rank=None):
        self.plus = list(plus)
        self.minus = list(minus)
        self.lattice = lattice
        self.heightfn = heightfn
        self.prefactor = ExactScalar.one() if prefactor is None else prefactor
        if minus_conj not in ("flip", "bar_flip"):
            raise ValueError("minus_conj must be 'flip' or 'bar_flip'")
        self.minus_conj = minus_conj
        self.tag = tag
        if rank is None:
            allf = self.plus + self.minus
            rank = len(allf[0].exponent) if allf else 1
        self.rank = rank

    def is_finite(self):
        return all(f.length is not INF and f.side == 1
                   for f in self.plus + self.minus)

    def simplified(self):
        return WeightSpec(simplify_factors(self.plus), simplify_factors(self.minus),
                          self.lattice, self.heightfn, self.prefactor,
                          self.minus_conj, self.tag, self.rank)

    def to_json(self):
        return {"tag": self.tag, "prefactor": self.prefactor.render(),
                "minus_conj": self.minus_conj,
                "plus": [f.to_json() for f in self.plus],
                "minus": [f.to_json() for f in self.minus]}

    def __repr__(self):
        return "WeightSpec(%s: %d plus, %d minus factors)" % (
            self.tag, len(self.plus), len(self.minus))


# ---------------------------------------------------------------------------
# factor-list simplification
# ---------------------------------------------------------------------------


def simplify_factors(factors):
    """Apply cancellation and merge rules until nothing changes."""
    fs = list(factors)
    changed = True
    while changed:
        changed = False
        # exact numerator/denominator cancellation
        for i, f in enumerate(fs):
            for j, g in enumerate(fs):
                if i != j and f.side == -g.side and f.key() == g.key():
                    fs = [x for k, x in enumerate(fs) if k not in (i, j)]
                    changed = True
                    break
            if changed:
                break
        if changed:
            continue
        # infinite ratio (x;p)_inf / (x p^k; p)_inf -> (x;p)_k
        for i, f in enumerate(fs):
            if f.side != 1 or f.length is not INF:
                continue
            for j, g in enumerate(fs):
                if (g.side == -1 and g.length is INF and i != j and
                        g.exponent == f.exponent and g.base_log == f.base_log):
                    k = _qpower_ratio(g.coeff, f.coeff, f.base_log)
                    if k is not None and k >= 0:
                        fs = [x for t, x in enumerate(fs) if t not in (i, j)]
                        fs.append(replace(f, length=k))
                        changed = True
                        break
            if changed:
                break
        if changed:
            continue
        # sign merge (cz;p)_L (-cz;p)_L -> (c^2 z^2; p^2)_L, same side
        for i, f in enumerate(fs):
            for j, g in enumerate(fs):
                if (i < j and f.side == g.side and f.length == g.length and
                        f.exponent == g.exponent and f.base_log == g.base_log and
                        (f.coeff + g.coeff).is_zero()):
                    merged = PochFactor(
                        f.coeff * f.coeff,
                        tuple(2 * e for e in f.exponent),
                        2 * f.base_log, f.length, f.side)
                    fs = [x for t, x in enumerate(fs) if t not in (i, j)]
                    fs.append(merged)
                    changed = True
                    break
            if changed:
                break
        if changed:
            continue
        # base halving (x;p^2)_inf (xp;p^2)_inf -> (x;p)_inf, same side
        for i, f in enumerate(fs):
            if f.length is not INF or f.base_log % 2:
                continue
            half = f.base_log // 2
            for j, g in enumerate(fs):
                if (i != j and g.side == f.side and g.length is INF and
                        g.exponent == f.exponent and g.base_log == f.base_log and
                        g.coeff == f.coeff * _qpow(half)):
                    fs = [x for t, x in enumerate(fs) if t not in (i, j)]
                    fs.append(replace(f, base_log=half))
                    changed = True
                    break
            if changed:
                break
    return fs


def _qpower_ratio(a, b, base_log):
    """k >= 0 with a == b * q^{base_log * k}, else None."""
    if b.is_zero():
        return None
    r = a / b
    if len(r.num) != 1 or len(r.den) != 1 or 0 not in r.den:
        return None
    e = next(iter(r.num))
    if r.num[e] != r.den[0]:
        return None
    k = Fraction(e, 2 * base_log)
    return int(k) if k.denominator == 1 and k >= 0 else None


# ---------------------------------------------------------------------------
# expansion of one cone part
# ---------------------------------------------------------------------------


def _factor_terms(f, kmax):
    """Terms (k, scalar) of the factor's e^{k * exponent} expansion."""
    p = 2 * f.base_log  # v-exponent of the base
    out = []
    if f.length is not INF:
        if f.side == 1:
            # expand the finite product directly
            poly = {0: ExactScalar.one()}
            for j in range(f.length):
                fac = f.coeff * ExactScalar.v_power(p * j)
                nxt = dict(poly)
                for k, c in poly.items():
                    add = -(c * fac)
                    s = nxt.get(k + 1)
                    s = add if s is None else s + add
                    if s.is_zero():
                        nxt.pop(k + 1, None)
                    else:
                        nxt[k + 1] = s
                poly = nxt
            return [(k, c) for k, c in sorted(poly.items()) if k <= kmax]
        # finite denominator: product of geometric series, term-bounded
        polys = []
        for j in range(f.length):
            fac = f.coeff * ExactScalar.v_power(p * j)
            polys.append([fac ** k for k in range(kmax + 1)])
        acc = {0: ExactScalar.one()}
        for geo in polys:
            nxt = {}
            for k, c in acc.items():
                for k2 in range(kmax + 1 - k):
                    s = nxt.get(k + k2)
                    term = c * geo[k2]
                    s = term if s is None else s + term
                    if s.is_zero():
                        nxt.pop(k + k2, None)
                    else:
                        nxt[k + k2] = s
            acc = nxt
        return sorted(acc.items())
    # infinite factors, Euler expansions
    pfac = ExactScalar.one()
    ppow = ExactScalar.one()
    step = ExactScalar.v_power(p)
    coe = ExactScalar.one()
    out.append((0, ExactScalar.one()))
    for k in range(1, kmax + 1):
        ppow = ppow * step  # q^{bk}
        pfac = pfac * (ExactScalar.one() - ppow)  # (p;p)_k
        coe = coe * f.coeff
        if f.side == -1:
            out.append((k, coe / pfac))
        else:
            sign = -1 if k % 2 else 1
            out.append((k, ExactScalar.v_power(p * (k * (k - 1) // 2),
                                               sign) * coe / pfac))
    return out


def _factor_env(f, k):
    """Lower bound on the v-order of the factor's k-th term; None if absent."""
    if k == 0:
        return 0
    oc = f.coeff.v_order()
    p = 2 * f.base_log
    if f.length is not INF:
        if f.side == 1:
            if k > f.length:
                return None
            lowest = sorted(p * j for j in range(f.length))[:k]
            return k * oc + sum(lowest)
        # geometric terms repeat factors: k copies of the cheapest one
        return k * oc + k * min(0, min((p * j for j in range(f.length)), default=0))
    if f.side == -1:
        return k * oc
    return k * oc + p * (k * (k - 1) // 2)


class ConePart:
    """Height-bounded expansion of a product of positive-cone factors."""

    def __init__(self, factors, lattice, heightfn):
        self.factors = factors
        self.lattice = lattice
        self.heightfn = heightfn
        for f in factors:
            h = heightfn(f.exponent)
            if h <= 0:
                raise ValueError("factor exponent %s is not in the positive cone"
                                 % (f.exponent,))

    def expand(self, H, prec=None, bar=False):
        """All terms of height <= H; exact, or series coefficients if prec.

        Per-factor term coefficients are always produced exactly (they are
        single Pochhammer fractions); with `prec` the accumulation runs in
        the series backend, and `bar` sends q -> 1/q through each factor
        coefficient first.
        """
        rank = len(self.factors[0].exponent) if self.factors else 1
        unit = ExactScalar.one() if prec is None else SeriesScalar.one(prec)
        acc = {(0,) * rank: unit}
        for f in self.factors:
            hf = self.heightfn(f.exponent)
            kmax = H // hf
            terms = _factor_terms(f, kmax)
            if bar:
                terms = [(k, c.bar()) for k, c in terms]
            if prec is not None:
                terms = [(k, c.to_series(prec)) for k, c in terms]
            nxt = {}
            for e, c in acc.items():
                he = self.heightfn(e)
                for k, fc in terms:
                    if he + k * hf > H:
                        continue
                    ee = tuple(x + k * y for x, y in zip(e, f.exponent))
                    prod = c * fc
                    s = nxt.get(ee)
                    s = prod if s is None else s + prod
                    if s.is_zero():
                        nxt.pop(ee, None)
                    else:
                        nxt[ee] = s
            acc = nxt
        return GAElement(acc, self.lattice)

    def order_envelope(self, H):
        """env[h]: lower bound for the v-order of any term at height h."""
        BIG = 1 << 60
        env = [0] + [BIG] * H
        for f in self.factors:
            hf = self.heightfn(f.exponent)
            fenv = []
            for k in range(H // hf + 1):
                fo = _factor_env(f, k)
                if fo is None:
                    break
                fenv.append(fo)
            nxt = [BIG] * (H + 1)
            for h in range(H + 1):
                if env[h] >= BIG:
                    continue
                for k, fo in enumerate(fenv):
                    hh = h + k * hf
                    if hh > H:
                        break
                    val = env[h] + fo
                    if val < nxt[hh]:
                        nxt[hh] = val
            env = nxt
        return env


# ---------------------------------------------------------------------------
# pairing engine
# ---------------------------------------------------------------------------


class TruncationError(ArithmeticError):
    pass


# optional on-disk cache for expanded series weights; versioned, invalidated
# on bump
CACHE_VERSION = 1
_cache_dir = None


def set_cache_dir(path):
    global _cache_dir
    _cache_dir = path
    if path:
        import os

        os.makedirs(path, exist_ok=True)


def _cache_key(spec, order, hint, margin):
    import hashlib

    blob = repr((CACHE_VERSION, spec.to_json(), order, hint, margin))
    return hashlib.sha1(blob.encode()).hexdigest()


def _series_terms_to_json(terms):
    return [{"e": list(e),
             "c": [[k, str(v)] for k, v in sorted(c.coeffs.items())],
             "p": c.prec}
            for e, c in sorted(terms.items())]


def _series_terms_from_json(data):
    from fractions import Fraction

    out = {}
    for item in data:
        out[tuple(item["e"])] = SeriesScalar(
            {k: Fraction(v) for k, v in item["c"]}, item["p"])
    return out


class WeightEngine:
    """Prepared weight for constant-term pairing against finite elements.

    Finite specs are multiplied out once and paired exactly.  Infinite
    specs are expanded to a height at which the order envelope proves that
    every discarded cross term sits above the working order.
    """

    def __init__(self, spec, order=60, height_hint=6, margin=8, backend="auto"):
        self.spec = spec.simplified()
        self.order = order
        self.height_hint = height_hint
        self.margin = margin
        self._exact_product = None
        self._plus_terms = None
        self._minus_terms = None
        self._guaranteed = None
        if backend == "auto" and self.spec.is_finite():
            self._build_exact()
        elif backend in ("auto", "series"):
            self._build_series()
        else:
            raise ValueError("backend must be 'auto' or 'series'")

    # -- construction --------------------------------------------------------

    def _build_exact(self):
        spec = self.spec
        one = GAElement.one(spec.lattice, spec.rank)
        Hp = sum(spec.heightfn(f.exponent) * f.length for f in spec.plus)
        Hm = sum(spec.heightfn(f.exponent) * f.length for f in spec.minus)
        pe = (ConePart(spec.plus, spec.lattice, spec.heightfn).expand(Hp)
              if spec.plus else one)
        me = (ConePart(spec.minus, spec.lattice, spec.heightfn).expand(Hm)
              if spec.minus else one)
        me = me.conjugate(self.spec.minus_conj)
        self._exact_product = (pe * me).scale(spec.prefactor)

    def _build_series(self):
        spec = self.spec
        if _cache_dir is not None:
            import json
            import os

            path = os.path.join(_cache_dir, _cache_key(
                spec, self.order, self.height_hint, self.margin) + ".json")
            if os.path.exists(path):
                with open(path) as fh:
                    data = json.load(fh)
                self._plus_terms = _series_terms_from_json(data["plus"])
                self._minus_terms = _series_terms_from_json(data["minus"])
                self._work = data["work"]
                self._guaranteed = data["guaranteed"]
                self._w_cache = {}
                return
        self._build_series_fresh()
        if _cache_dir is not None:
            import json
            import os

            path = os.path.join(_cache_dir, _cache_key(
                spec, self.order, self.height_hint, self.margin) + ".json")
            with open(path + ".tmp", "w") as fh:
                json.dump({"plus": _series_terms_to_json(self._plus_terms),
                           "minus": _series_terms_to_json(self._minus_terms),
                           "work": self._work,
                           "guaranteed": self._guaranteed}, fh)
            os.replace(path + ".tmp", path)

    def _build_series_fresh(self):
        spec = self.spec
        plus = ConePart(spec.plus, spec.lattice, spec.heightfn)
        minus = ConePart(spec.minus, spec.lattice, spec.heightfn)
        K = self.height_hint
        target = self.order + self.margin
        H_cap = 4 * (target + K) + 32
        env_p = plus.order_envelope(H_cap)
        env_m = minus.order_envelope(H_cap)
        min_m = min(env_m)
        min_p = min(env_p)
        need_p = target - min(0, min_m) + K
        need_q = target - min(0, min_p) + K

        def choose(env, need):
            # smallest H such that the envelope stays >= need beyond H;
            # the per-factor envelopes are nondecreasing beyond the cap
            # because every infinite factor gains nonnegative order per step
            H = None
            for h in range(len(env) - 1, -1, -1):
                if env[h] < need:
                    H = h
                    break
            if H is None:
                return 0
            if H >= len(env) - 1:
                raise TruncationError(
                    "order envelope below %d at the expansion cap %d" %
                    (need, len(env) - 1))
            return H

        Hp = choose(env_p, need_p) + K
        Hm = choose(env_m, need_q) + K
        self._guaranteed = self.order
        work = self.order + self.margin - min(0, min_m) - min(0, min_p)
        bar = self.spec.minus_conj == "bar_flip"
        self._plus_terms = plus.expand(Hp, prec=work).terms
        self._minus_terms = minus.expand(Hm, prec=work, bar=bar).terms
        self._work = work
        self._w_cache = {}

    def _weight_coefficient(self, nu):
        """Series coefficient of the weight at exponent nu (lazily cached)."""
        got = self._w_cache.get(nu)
        if got is not None:
            return got
        work = self._work
        acc = SeriesScalar.zero(work)
        minus = self._minus_terms
        for mu, pc in self._plus_terms.items():
            key = tuple(m - t for m, t in zip(mu, nu))
            mc = minus.get(key)
            if mc is None:
                continue
            op = pc.min_order()
            om = mc.min_order()
            if op is None or om is None or op + om >= work:
                continue
            acc = acc + pc * mc
        self._w_cache[nu] = acc
        return acc

    # -- pairing --------------------------------------------------------------

    def ct_pair(self, h):
        """ct(h * W) for a finite h; exact or series per the weight."""
        if self._exact_product is not None:
            W = self._exact_product
            acc = ExactScalar.zero()
            for e, c in h.terms.items():
                w = W.terms.get(tuple(-x for x in e))
                if w is not None:
                    acc = acc + c * w
            return acc
        # series: ct(h * pref * P * conj(M)) = sum_e h_e * W_{-e}
        hts = [abs(self.spec.heightfn(e)) for e in h.terms]
        if hts and max(hts) > self.height_hint:
            raise TruncationError(
                "pairing support height %d exceeds the planned hint %d"
                % (max(hts), self.height_hint))
        prec = self._work
        acc = SeriesScalar.zero(prec)
        pref = self.spec.prefactor.to_series(prec)
        slack = max(0, -(self.spec.prefactor.v_order() or 0))
        worst = 0
        for c in h.terms.values():
            o = c.min_order() if isinstance(c, SeriesScalar) else c.v_order()
            if o is not None and o < worst:
                worst = o
        slack += -worst
        if slack > self.margin:
            raise TruncationError(
                "coefficient orders consume %d of the %d-order margin"
                % (slack, self.margin))
        for e, c in h.terms.items():
            ce = c if isinstance(c, SeriesScalar) else c.to_series(prec)
            w = self._weight_coefficient(tuple(-x for x in e))
            if not w.is_zero():
                acc = acc + ce * w
        out = acc * pref
        return SeriesScalar(
            {e: c for e, c in out.coeffs.items() if e < self._guaranteed},
            min(out.prec, self._guaranteed))

    def ct_norm(self):
        return self.ct_pair(GAElement.one(self.spec.lattice, self.spec.rank))


def sym_pair(f, g, engine, conj="flip", normalized=False):
    """ct((f * conj(g)) W), optionally divided by ct(W)."""
    h = f * g.conjugate(conj)
    val = engine.ct_pair(h)
    if normalized:
        val = val / engine.ct_norm()
    return val


def mat_pair(A, B, M, engine, conj="flip"):
    """Matrix of ct((A^T M conj(B))_{b,b'} W) values."""
    G = A.transpose() * M * B.map_entries(lambda x: x.conjugate(conj))
    return [[engine.ct_pair(G[i, j]) for j in range(G.size)]
            for i in range(G.size)]


# ---------------------------------------------------------------------------
# standard weight builders (restricted coordinates)
# ---------------------------------------------------------------------------


def macdonald_sym_weight(restricted, qhat_log, t, lattice, minus_conj="flip",
                         tag=""):
    """prod_{a>0} (e^a; qh)_inf / (t e^a; qh)_inf times its reflection."""
    plus = []
    for a in restricted._positive_roots():
        plus.append(PochFactor(ExactScalar.one(), a, qhat_log, INF, 1))
        plus.append(PochFactor(t, a, qhat_log, INF, -1))
    return WeightSpec(plus, list(plus), lattice, restricted.height2,
                      minus_conj=minus_conj, tag=tag)


def macdonald_nonsym_weight(restricted, qhat_log, t, lattice, tag=""):
    """The one-sided-shifted product used for the non-W-invariant families."""
    qh = _qpow(qhat_log)
    plus, minus = [], []
    for a in restricted._positive_roots():
        plus.append(PochFactor(ExactScalar.one(), a, qhat_log, INF, 1))
        plus.append(PochFactor(t, a, qhat_log, INF, -1))
        minus.append(PochFactor(qh, a, qhat_log, INF, 1))
        minus.append(PochFactor(qh * t, a, qhat_log, INF, -1))
    return WeightSpec(plus, minus, lattice, restricted.height2,
                      minus_conj="flip", tag=tag)


def aw_plus_factors(params, qhat_log=2):
    """One-variable weight numerator (z^2;qh)_inf over four shifted factors."""
    out = [PochFactor(ExactScalar.one(), (2,), qhat_log, INF, 1)]
    for p in params:
        out.append(PochFactor(p, (1,), qhat_log, INF, -1))
    return out


def aw_weight(params, lattice, qhat_log=2, minus_conj="flip", tag=""):
    plus = aw_plus_factors(params, qhat_log)
    return WeightSpec(plus, list(plus), lattice, lambda e: e[0],
                      minus_conj=minus_conj, tag=tag)
