"""Command-line interface: ``harmeis {coeffs,eval,verify,kernel,weil}``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numerical-certification failure.
"""
import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

from . import eisenstein as eis
from . import theta as th
from . import verify as vf
from .lattice import LatticeContext
from .weil import rho_dual, rho_S, rho_T

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CERT = 0, 1, 2, 3

DEFAULTS = {
    "level": 3, "h": "all", "mmax": None, "tau": "0,1", "t": "1", "eps": None,
    "tol": 1e-12, "format": "pretty", "out": None, "seed": 0, "suite": "all", "dual": False,
}


class UsageError(ValueError):
    pass


@dataclass
class CliConfig:
    level: int
    cosets: list
    mmax: object
    taus: list
    ts: list
    eps: object
    tol: float
    format: str
    out: object
    seed: int
    suite: str = "all"
    dual: bool = False
    ctx: LatticeContext = field(init=False)

    def __post_init__(self):
        if self.level < 1:
            raise UsageError("--level must be >= 1")
        if self.mmax is not None and self.mmax < 0:
            raise UsageError("--mmax must be >= 0")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.format not in ("json", "csv", "pretty"):
            raise UsageError("--format must be json, csv or pretty")
        if any(not z.imag > 0 for z in self.taus):
            raise UsageError("--tau must have positive imaginary part")
        if any(not t > 0 for t in self.ts):
            raise UsageError("--t values must be positive")
        self.ctx = LatticeContext(self.level)


def parse_tau(text):
    """'u,v' or a Python complex literal such as '0.5+1.2j'."""
    text = str(text).strip()
    try:
        if "," in text:
            u, v = (float(p) for p in text.split(","))
            return complex(u, v)
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"cannot parse tau {text!r}") from exc


def parse_taus(text):
    return [parse_tau(p) for p in str(text).split(";") if p.strip()]


def parse_cosets(text, N):
    if str(text).strip() == "all":
        return LatticeContext(N).cosets() if N >= 1 else []
    try:
        h1, h2 = (int(p) for p in str(text).split(","))
    except ValueError as exc:
        raise UsageError(f"--h must be 'h1,h2' or 'all', got {text!r}") from exc
    return [LatticeContext(N).coset(h1, h2)] if N >= 1 else []


def build_config(args):
    merged = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        unknown = set(cfg) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        merged.update(cfg)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            merged[key] = val
    try:
        level = int(merged["level"])
        ts = [float(x) for x in str(merged["t"]).split(",")]
        eps = None if merged["eps"] is None else float(merged["eps"])
        mmax = None if merged["mmax"] is None else int(merged["mmax"])
        tol = float(merged["tol"])
        seed = int(merged["seed"])
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    return CliConfig(level, parse_cosets(merged["h"], level), mmax, parse_taus(merged["tau"]), ts,
                     eps, tol, merged["format"], merged["out"], seed, str(merged["suite"]),
                     bool(merged["dual"]))


def _digits(tol):
    return max(1, min(17, int(math.ceil(-math.log10(tol)))))


def _fmt(z, tol):
    d = _digits(tol)
    return f"{z.real:.{d}f}{z.imag:+.{d}f}j"


# ---------------------------------------------------------------------------
# commands


def cmd_coeffs(cfg):
    ctx = cfg.ctx
    m_max = cfg.mmax if cfg.mmax is not None else 10 * ctx.level
    exps = [eis.harmonic_expansion(ctx, h, m_max) for h in cfg.cosets]
    if cfg.format == "json":
        return "[" + ",\n".join(eis.to_json(e) for e in exps) + "]\n"
    if cfg.format == "csv":
        return eis.to_csv(exps)
    lines = []
    for e in exps:
        lines.append(f"N={ctx.level} h=({e.h.h1},{e.h.h2}) m_max={m_max}")
        lines.append(f"  {'m':>5}  {'c_h':>10}  {'c~_h':>22}  symbolic")
        cs = {0: e.log_v_coeff, **e.nonhol_coeffs}
        for m in sorted(set(cs) | set(e.hol_coeffs)):
            c = str(cs[m]) if m in cs else ""
            ct = f"{e.hol_coeffs[m]:.15g}" if m in e.hol_coeffs else ""
            sym = " ".join(f"{q}*log{p}" for p, q in e.hol_symbolic.get(m, {}).items())
            lines.append(f"  {m:>5}  {c:>10}  {ct:>22}  {sym}")
    return "\n".join(lines) + "\n"


def cmd_eval(cfg):
    ctx = cfg.ctx
    rows = []
    for tau in cfg.taus:
        m_q = cfg.mmax if cfg.mmax is not None else eis.m_max_for(ctx, tau, cfg.tol)
        m_h = cfg.mmax if cfg.mmax is not None else eis.m_max_for(ctx, tau, cfg.tol, tilde=True)
        for h in cfg.cosets:
            a = eis.eval_vartheta(eis.q_expansion(ctx, h, m_q), tau, cfg.tol)
            b = eis.eval_vartheta_tilde(eis.harmonic_expansion(ctx, h, m_h), tau, cfg.tol)
            rows.append({"N": ctx.level, "h": [h.h1, h.h2], "tau": [tau.real, tau.imag],
                         "vartheta": a.value, "vartheta_bound": a.tail_bound,
                         "theta_tilde": b.value, "theta_tilde_bound": b.tail_bound})
    return _emit_rows(rows, cfg, ("vartheta", "theta_tilde"))


def cmd_kernel(cfg):
    ctx = cfg.ctx
    rows = []
    for tau in cfg.taus:
        for t in cfg.ts:
            for h in cfg.cosets:
                a = th.theta_h(ctx, h, tau, t, cfg.tol)
                b = th.theta_tilde_h(ctx, h, tau, t, cfg.tol)
                row = {"N": ctx.level, "h": [h.h1, h.h2], "tau": [tau.real, tau.imag], "t": t,
                       "theta": a.value, "theta_bound": a.tail_bound,
                       "theta_tilde": b.value, "theta_tilde_bound": b.tail_bound}
                if cfg.eps is not None:
                    s = th.theta_tilde_shifted_h(ctx, h, tau, t, th.ShiftPair(cfg.eps, -cfg.eps), cfg.tol)
                    row["theta_tilde_eps"] = s.value
                    row["theta_tilde_eps_bound"] = s.tail_bound
                rows.append(row)
    names = ("theta", "theta_tilde") + (("theta_tilde_eps",) if cfg.eps is not None else ())
    return _emit_rows(rows, cfg, names)


def _emit_rows(rows, cfg, complex_keys):
    if cfg.format == "json":
        out = []
        for r in rows:
            r = dict(r)
            for k in complex_keys:
                r[k] = [r[k].real, r[k].imag]
            out.append(r)
        return json.dumps(out, indent=1) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        head = [k for k in rows[0] if k not in ("h", "tau")] if rows else []
        header = ["N", "h1", "h2", "u", "v"]
        cols = []
        for k in head:
            if k == "N":
                continue
            if k in complex_keys:
                header += [f"{k}_re", f"{k}_im"]
            else:
                header.append(k)
            cols.append(k)
        w.writerow(header)
        d = _digits(cfg.tol)
        for r in rows:
            line = [r["N"], *r["h"], *r["tau"]]
            for k in cols:
                if k in complex_keys:
                    line += [f"{r[k].real:.{d}f}", f"{r[k].imag:.{d}f}"]
                elif k.endswith("bound"):
                    line.append(f"{r[k]:.3e}")
                else:
                    line.append(r[k])
            w.writerow(line)
        return buf.getvalue()
    lines = []
    for r in rows:
        head = f"N={r['N']} h=({r['h'][0]},{r['h'][1]}) tau={complex(*r['tau'])}"
        if "t" in r:
            head += f" t={r['t']}"
        lines.append(head)
        for k in complex_keys:
            lines.append(f"  {k:<16} {_fmt(r[k], cfg.tol)}   (tail <= {r[k + '_bound']:.2e})")
    return "\n".join(lines) + "\n"


def cmd_weil(cfg):
    mats = [rho_S(cfg.ctx), rho_T(cfg.ctx)]
    if cfg.dual:
        mats = [rho_dual(m) for m in mats]
    if cfg.format == "json":
        return "[" + ",\n".join(m.to_json() for m in mats) + "]\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "row_h1", "row_h2", "col_h1", "col_h2", "re", "im"])
        cos = cfg.ctx.cosets()
        for m in mats:
            for i, a in enumerate(cos):
                for j, b in enumerate(cos):
                    z = m.matrix[i, j]
                    w.writerow([m.label, a.h1, a.h2, b.h1, b.h2, repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()
    lines = []
    for m in mats:
        lines.append(f"rho({m.label}) for N={m.N}, basis e_h in row-major (h1, h2) order")
        for row in m.matrix:
            lines.append("  " + " ".join(f"{z.real:+.4f}{z.imag:+.4f}j" for z in row))
    return "\n".join(lines) + "\n"


def cmd_verify(cfg):
    reports = vf.run_suite(cfg.ctx, cfg.suite, seed=cfg.seed)
    text = vf.to_json_lines(reports) if cfg.format == "json" else vf.format_table(reports) + "\n"
    failed = sum(not r.passed for r in reports)
    if cfg.format != "json":
        text += f"{len(reports) - failed}/{len(reports)} checks passed\n"
    return text, failed


COMMANDS = {"coeffs": cmd_coeffs, "eval": cmd_eval, "verify": cmd_verify,
            "kernel": cmd_kernel, "weil": cmd_weil}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int, help="level N of L = N Z^2")
    common.add_argument("--h", help="coset 'h1,h2' or 'all'")
    common.add_argument("--mmax", type=int, help="coefficient truncation m_max (m = N n)")
    common.add_argument("--tau", help="'u,v' or '0.5+1.2j'; several separated by ';'")
    common.add_argument("--t", help="comma-separated t grid")
    common.add_argument("--eps", type=float, help="shift eps for the regularized kernel")
    common.add_argument("--tol", type=float, help="certified tolerance")
    common.add_argument("--format", choices=("json", "csv", "pretty"))
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--config", help="JSON file with the same keys as the flags")
    common.add_argument("--seed", type=int, help="seed for default verification samples")
    p = argparse.ArgumentParser(prog="harmeis", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("coeffs", parents=[common], help="coefficient tables")
    sub.add_parser("eval", parents=[common], help="evaluate vartheta and theta~ at tau")
    v = sub.add_parser("verify", parents=[common], help="run verification checks")
    v.add_argument("--suite", help=f"'all' or comma list of {', '.join(vf.SUITES)}")
    sub.add_parser("kernel", parents=[common], help="export kernels on a (tau, t) grid")
    w = sub.add_parser("weil", parents=[common], help="dump rho(S) and rho(T)")
    w.add_argument("--dual", action="store_true", help="dump the dual representation")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        result = COMMANDS[args.command](cfg)
    except (UsageError, ValueError) as exc:
        print(f"harmeis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except eis.CertificationError as exc:
        print(f"harmeis: certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT
    status = EXIT_OK
    if isinstance(result, tuple):
        result, failed = result
        status = EXIT_FAIL if failed else EXIT_OK
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(result)
    else:
        sys.stdout.write(result)
    return status


if __name__ == "__main__":
    sys.exit(main())
