"""Per-field classifier: class and normic obstructions, torsion order, ambiguous classes."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from . import _kernels as K
from . import errors
from .arith import kronecker, valuation
from .padic import DEFAULT_PRECISION, fermat_delta
from .qfield import QuadInt, QuadraticField, field_from_discriminant, fundamental_discriminants
from .units import p_unit

log = logging.getLogger(__name__)

CSV_COLUMNS = [
    "m", "D", "p", "h", "h0", "vp_h", "vp_h0", "delta_eps", "delta_eta",
    "pb_classes", "pb_normique", "sufficient", "log_trivial", "p_rational", "torsion_order",
]


@dataclass(frozen=True)
class InvariantReport:
    m: int
    D: int
    p: int
    h: int
    v_p_h: int
    h0: int
    v_p_h0: int
    delta_eps: int
    delta_eta: int
    flag_classes: bool
    flag_normique: bool
    sufficient_condition: bool
    log_class_trivial: bool | None
    p_rational: bool
    torsion_order: int
    regulator_order: int
    eps: QuadInt | None = None
    eta: QuadInt | None = None

    @property
    def eta_representative_sensitive(self) -> bool:
        # delta of a p-unit is only defined up to delta(eps)
        return self.delta_eta >= self.delta_eps

    def row(self) -> dict:
        out = {
            "m": self.m, "D": self.D, "p": self.p, "h": self.h, "h0": self.h0,
            "vp_h": self.v_p_h, "vp_h0": self.v_p_h0,
            "delta_eps": self.delta_eps, "delta_eta": self.delta_eta,
            "pb_classes": self.flag_classes, "pb_normique": self.flag_normique,
            "sufficient": self.sufficient_condition,
        }
        if self.log_class_trivial is not None:
            out["log_trivial"] = self.log_class_trivial
        out["p_rational"] = self.p_rational
        out["torsion_order"] = self.torsion_order
        return out

    def to_json(self, extended: bool = False) -> str:
        out = self.row()
        if extended:
            out["regulator_order"] = self.regulator_order
            out["eta_representative_sensitive"] = self.eta_representative_sensitive
            if self.eps is not None:
                out["eps"] = self.eps.format(self.m)
            if self.eta is not None:
                out["eta"] = self.eta.format(self.m)
        return json.dumps(out, separators=(",", ":"))

    def csv_row(self) -> list[str]:
        row = self.row()
        return [_csv_value(row.get(c)) for c in CSV_COLUMNS]


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def check_report(r: InvariantReport) -> None:
    """Assert the logical relations every report must satisfy."""
    assert r.flag_classes == (r.v_p_h != r.v_p_h0)
    assert r.flag_normique == (r.delta_eps >= 1 and r.delta_eta >= 1)
    assert r.sufficient_condition == (not r.flag_classes and not r.flag_normique)
    assert r.log_class_trivial is None or r.log_class_trivial == r.sufficient_condition
    assert r.p_rational == (r.v_p_h == 0 and r.delta_eps == 0)
    assert r.torsion_order == r.p ** (r.v_p_h + r.delta_eps)


def analyze(field: QuadraticField, p: int, t: int = DEFAULT_PRECISION) -> InvariantReport:
    if not field.is_split(p):
        if field.D % p == 0:
            raise errors.Ramified(f"{p} ramifies in Q(sqrt {field.m})", m=field.m, p=p)
        raise errors.NotSplit(f"{p} is inert in Q(sqrt {field.m})", m=field.m, p=p)
    h = field.class_group.h
    eps = field.unit.eps
    d_eps = fermat_delta(eps, field, p, t, strict=True).value
    pu = p_unit(field, p)
    # eta lies in the prime of the first embedding; only the second sees it as a unit
    d_eta = fermat_delta(pu.eta, field, p, t, embedding=1, strict=True).value
    vh, vh0 = valuation(h, p), valuation(pu.h0, p)
    flag_c = vh != vh0
    flag_n = d_eps >= 1 and d_eta >= 1
    suff = not flag_c and not flag_n
    report = InvariantReport(
        m=field.m, D=field.D, p=p, h=h, v_p_h=vh, h0=pu.h0, v_p_h0=vh0,
        delta_eps=d_eps, delta_eta=d_eta, flag_classes=flag_c, flag_normique=flag_n,
        sufficient_condition=suff, log_class_trivial=suff,
        p_rational=(vh == 0 and d_eps == 0),
        torsion_order=p ** (vh + d_eps), regulator_order=p**d_eps,
        eps=eps, eta=pu.eta,
    )
    check_report(report)
    return report


def ambiguous_class_number(field: QuadraticField, p: int, n: int) -> int:
    """Order of the ambiguous p-classes in the n-th layer of the cyclotomic Z_p-extension."""
    if n < 0:
        raise errors.InvalidArgument("n must be nonnegative")
    if not field.is_split(p):
        raise errors.NotSplit(f"{p} is not split in Q(sqrt {field.m})", m=field.m, p=p)
    vh = valuation(field.class_group.h, p)
    d = fermat_delta(field.unit.eps, field, p, strict=True).value
    return p ** (vh + min(d, n))


def _unit_delta_fast(D: int, p: int, t: int) -> int | None:
    """delta_p(eps) at precision t from eps mod p^t, or None when saturated."""
    from .arith import hensel_sqrt, sqrt_mod_prime

    M = p**t
    a, b, _ = K.cf_unit_mod(D, M)
    r = sqrt_mod_prime(D, p)
    r = hensel_sqrt(D, p, t, root=min(r, p - r))
    y = (a + b * r) * pow(2, -1, M) % M
    z = (pow(y, p - 1, M) - 1) % M
    if z == 0:
        return None
    return valuation(z, p) - 1


def _scan_chunk(args) -> list[InvariantReport]:
    Ds, p, vh_min, zmax_exp, t = args
    out = []
    for D in Ds:
        try:
            if kronecker(D, p) != 1:
                continue
            if zmax_exp > 0:
                fast = _unit_delta_fast(D, p, max(t, zmax_exp + 1))
                if fast is not None and fast < zmax_exp:
                    continue
            field = field_from_discriminant(D)
            if valuation(field.class_group.h, p) < vh_min:
                continue
            rep = analyze(field, p, t)
            if rep.delta_eps >= zmax_exp:
                out.append(rep)
        except errors.QuadTorsError as exc:
            log.warning("skipping D=%d: %s", D, exc)
    return out


def scan(
    bD: int,
    BD: int,
    p: int,
    vh_min: int = 0,
    zmax_exp: int = 0,
    t: int = DEFAULT_PRECISION,
    jobs: int = 1,
    chunk: int = 20000,
) -> Iterator[InvariantReport]:
    """Reports for fundamental D in [bD, BD], split at p, passing the filters, ascending D."""
    Ds = fundamental_discriminants(bD, BD)
    chunks = [(Ds[i : i + chunk], p, vh_min, zmax_exp, t) for i in range(0, len(Ds), chunk)]
    if jobs <= 1 or len(chunks) <= 1:
        for c in chunks:
            yield from _scan_chunk(c)
        return
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for reports in ex.map(_scan_chunk, chunks):
            yield from reports
