"""Command-line front end.

    umbra eval --family um-airy --a 0.5 --x 0:6 --method both
    umbra map --numer 1/3 --denom 5/2 --a 1/4 --x 0:2
    umbra verify --suite all --tol-profile default
    umbra toda --m 0:4 --n -5:5 --a 1 --alpha 1 --beta 1 --q0 0
    umbra oscillator --a 1 --x0 1 --p0 0 --steps 16
    umbra wave --omega 0.5 --k 0.5 --a 0.5 --b 0.5 --x 0:2 --t 0:2

Ranges are "start:stop" (inclusive lattice window with step a, or step 1
for the integer ranges n and m) or "start:stop:count" (evenly spaced).
Settings are resolved as flags > --config JSON file > UMBRA_TOL_PROFILE
(tolerance profile only) > built-in defaults.  Exit status: 0 success,
1 numerical failure or failed verification, 2 usage error.
"""

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, fields
from fractions import Fraction

from . import __version__
from .core import umbral_exp, umbral_trig
from .errors import UmbraError
from .solutions import (
    OscillatorState,
    TodaParams,
    WaveParams,
    WhittakerParams,
    c1c2_closed,
    inverse_square_closed,
    oscillator_energy,
    oscillator_evolve,
    phase_velocity,
    plane_wave,
    refraction_index,
    toda_continuum,
    toda_umbral,
    toda_umbral_momentum,
    um_airy,
    um_gaussian,
    um_whittaker_m,
    whittaker_a2_closed,
    whittaker_m,
)
from .specfun import HyperSpec, airy_ai_ref, hyper_eval
from .umbral_map import DELTA, LemmaInput, fourier_umbral_transform, rational_geom_transform, umbral_hyper_map
from .verify import SUITES, TOLERANCE_PROFILES, residual_suite

SCHEMA = "umbra/1"
COMMANDS = ("eval", "map", "verify", "toda", "oscillator", "wave")
FAMILIES = (
    "umbral-exp", "umbral-trig", "um-airy", "airy-ref", "um-gaussian", "um-whittaker-m",
    "whittaker-a2", "c1c2", "inverse-square", "rational-geom", "sampling",
)
ENV_PROFILE = "UMBRA_TOL_PROFILE"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str = "eval"
    family: str = "umbral-exp"
    method: str = "default"
    a: float = 1.0
    b: float = 1.0
    lam: float = 1.0
    kappa: float = 1.0
    mu: float = 0.5
    C1: float = 1.0
    C2: float = 0.0
    alpha: float = 1.0
    beta: float = 1.0
    q0: float = 0.0
    branch: int = 1
    omega: float = 1.0
    k: float = 1.0
    x0: float = 1.0
    p0: float = 0.0
    steps: int = 16
    x: str = "0:4"
    t: str = "0:4"
    n: str = "-5:5"
    m: str = "0:4"
    interp: int = 0
    numer: str = ""
    denom: str = ""
    scale: float = 1.0
    gamma: float = 0.0
    power_k: int = 1
    suite: str = "all"
    tol_profile: str = "default"
    exact: bool = False
    strict_domain: bool = False
    format: str = "csv"
    output: str = None

    def to_dict(self):
        return dataclasses.asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        known = {f.name: f for f in fields(cls)}
        unknown = set(d) - set(known)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**{k: _coerce(known[k], v) for k, v in d.items()})

    @classmethod
    def from_json(cls, s):
        return cls.from_dict(json.loads(s))

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command == "eval" and self.family not in FAMILIES:
            raise UsageError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.format not in ("csv", "json"):
            raise UsageError("format must be csv or json")
        if self.tol_profile not in TOLERANCE_PROFILES:
            raise UsageError(f"unknown tolerance profile {self.tol_profile!r}")
        if self.command == "verify" and self.suite != "all" and self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}")
        return self


def _coerce(f, v):
    if v is None:
        return None
    if f.type in ("float", float):
        return float(Fraction(v)) if isinstance(v, str) else float(v)
    if f.type in ("int", int):
        return int(v)
    if f.type in ("bool", bool):
        return bool(v)
    return str(v) if not isinstance(v, str) else v


# ---------------------------------------------------------------------------
# ranges and numbers
# ---------------------------------------------------------------------------

def parse_number(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a number: {s!r}") from exc


def parse_range(spec, step=None):
    """Points of "start:stop" (step ``step``) or "start:stop:count"."""
    parts = str(spec).split(":")
    try:
        if len(parts) == 1:
            return [parse_number(parts[0])]
        if len(parts) == 2:
            lo, hi = parse_number(parts[0]), parse_number(parts[1])
            if step is None:
                step = Fraction(1)
            elif isinstance(step, float):
                # 0.1 means one tenth, not its binary neighbour
                step = Fraction(repr(step))
            else:
                step = Fraction(step)
            if step <= 0:
                raise UsageError("range step must be positive")
            count = math.floor((hi - lo) / step + Fraction(1, 10 ** 9)) + 1
            return [lo + j * step for j in range(max(count, 0))]
        if len(parts) == 3:
            lo, hi, count = parse_number(parts[0]), parse_number(parts[1]), int(parts[2])
            if count < 1:
                raise UsageError("count must be positive")
            if count == 1:
                return [lo]
            return [lo + (hi - lo) * j / (count - 1) for j in range(count)]
    except ValueError as exc:
        raise UsageError(f"bad range {spec!r}") from exc
    raise UsageError(f"bad range {spec!r}")


def _int_range(spec):
    pts = parse_range(spec)
    if any(p.denominator != 1 for p in pts):
        raise UsageError(f"range {spec!r} must contain integers")
    return [int(p) for p in pts]


def _exact_or_float(v, exact):
    v = Fraction(v) if not isinstance(v, Fraction) else v
    return v if exact else float(v)


def _split(value, column):
    if isinstance(value, complex):
        return {f"{column}_re": value.real, f"{column}_im": value.imag}
    return {column: value}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _eval_point(cfg, x):
    fam, a = cfg.family, cfg.a
    xf = float(x)
    if fam == "umbral-exp":
        return {"value": umbral_exp(cfg.lam, xf, a)}
    if fam == "umbral-trig":
        s, c = umbral_trig(xf, a)
        return {"sin": s, "cos": c}
    if fam == "um-airy":
        method = "quadrature" if cfg.method == "default" else cfg.method
        if method == "both":
            q = um_airy(xf, a, "quadrature")
            s = um_airy(xf, a, "series")
            return {"quadrature": q, "series": s, "abs_diff": abs(q - s)}
        return {method: um_airy(xf, a, method)}
    if fam == "airy-ref":
        return {"value": airy_ai_ref(xf)}
    if fam == "um-gaussian":
        method = "u_identity" if cfg.method == "default" else cfg.method
        if method == "both":
            s = float(um_gaussian(xf, a, "series"))
            u = um_gaussian(xf, a, "u_identity")
            return {"series": s, "u_identity": u, "abs_diff": abs(s - u)}
        return {method: um_gaussian(xf, a, method), "continuum": math.exp(-xf * xf)}
    if fam == "um-whittaker-m":
        out = {"umbral": um_whittaker_m(cfg.kappa, cfg.mu, xf, a)}
        out["continuum"] = whittaker_m(cfg.kappa, cfg.mu, xf) if xf > 0 else float("nan")
        return out
    if fam == "whittaker-a2":
        return _split(whittaker_a2_closed(WhittakerParams(cfg.kappa, cfg.mu, cfg.C1, cfg.C2), xf), "value")
    if fam == "c1c2":
        return _split(c1c2_closed(cfg.kappa, xf, cfg.C1, cfg.C2), "value")
    if fam == "inverse-square":
        return _split(inverse_square_closed(cfg.kappa, a, xf, cfg.C1, cfg.C2), "value")
    if fam == "rational-geom":
        return {"value": rational_geom_transform(xf, a)}
    if fam == "sampling":
        closed = math.sin(math.pi * (1 + xf / a) / 2) / (math.pi * (a + xf)) if a + xf else 1 / (2 * a)
        return {"quadrature": fourier_umbral_transform(DELTA, xf, a), "closed": closed}
    raise UsageError(f"unknown family {fam!r}")


def cmd_eval(cfg):
    xs = parse_range(cfg.x, cfg.a)
    rows = []
    for x in xs:
        row = {"x": float(x)}
        row.update(_eval_point(cfg, x))
        rows.append(row)
    return rows, {}


def _param_list(s):
    return tuple(parse_number(p.strip()) for p in s.split(",") if p.strip()) if s else ()


def cmd_map(cfg):
    a = parse_number(str(cfg.a)) if cfg.exact else cfg.a
    h = HyperSpec(_param_list(cfg.numer), _param_list(cfg.denom),
                  parse_number(str(cfg.scale)) if cfg.exact else cfg.scale)
    inp = LemmaInput(Fraction(cfg.gamma).limit_denominator(10 ** 6) if cfg.exact else cfg.gamma,
                     Fraction(cfg.lam).limit_denominator(10 ** 6) if cfg.exact else cfg.lam,
                     cfg.power_k, h, a)
    rows = []
    for x in parse_range(cfg.x, cfg.a):
        xv = x if cfg.exact else float(x)
        spec = umbral_hyper_map(inp, xv)
        value = hyper_eval(spec)
        row = {"x": float(x), "mapped": str(spec), "class": str(spec.convergence_class())}
        row.update(_split(complex(value) if isinstance(value, complex) else float(value), "value"))
        rows.append(row)
    return rows, {}


def cmd_verify(cfg):
    names = SUITES if cfg.suite == "all" else (cfg.suite,)
    rows = [residual_suite(n, profile=cfg.tol_profile).as_dict() for n in names]
    failed = [r for r in rows if not r["passed"]]
    return rows, {"failed": failed}


def cmd_toda(cfg):
    p = TodaParams(cfg.q0, cfg.alpha, cfg.beta, cfg.branch)
    ns = _int_range(cfg.n)
    ms = _int_range(cfg.m)
    a = cfg.a
    rows = []
    for m in ms:
        t = m * a
        for n in ns:
            q, pc = toda_continuum(n, t, p)
            cont = abs(p.alpha * math.exp(-p.beta * n)) >= 1
            kw = {"continue_analytically": not cfg.strict_domain}
            rows.append({
                "n": n, "m": m, "t": t, "q": q, "p": pc,
                "Q": toda_umbral(n, m, a, p, **kw),
                "P": toda_umbral_momentum(n, m, a, p, **kw),
                "continued": cont,
            })
    extra = {"gamma": p.gamma, "velocity": p.velocity}
    if cfg.interp > 0:
        lo, hi = ns[0], ns[-1]
        count = (hi - lo) * cfg.interp + 1
        curve = []
        for m in ms:
            for j in range(count):
                x = lo + j / cfg.interp
                curve.append({"x": x, "m": m, "q": toda_continuum(x, m * a, p)[0]})
        extra["interpolated"] = curve
    return rows, extra


def cmd_oscillator(cfg):
    ex = cfg.exact
    a = _exact_or_float(Fraction(cfg.a).limit_denominator(10 ** 9), ex)
    s0 = OscillatorState(_exact_or_float(Fraction(cfg.x0).limit_denominator(10 ** 9), ex),
                         _exact_or_float(Fraction(cfg.p0).limit_denominator(10 ** 9), ex), 0 * a, a)
    rows = []
    for j in range(cfg.steps + 1):
        s = oscillator_evolve(s0, j * a)
        rows.append({"t": s.t, "X": s.X, "P": s.P, "energy": oscillator_energy(s)})
    return rows, {}


def cmd_wave(cfg):
    p = WaveParams(cfg.omega, cfg.k, cfg.a, cfg.b)
    rows = []
    for t in parse_range(cfg.t, cfg.a):
        for x in parse_range(cfg.x, cfg.b):
            row = {"x": float(x), "t": float(t)}
            row.update(_split(plane_wave(p, float(x), float(t)), "F"))
            rows.append(row)
    extra = {"phase_velocity": {}}
    for variant in ("arcsin", "arctan", "dispersion"):
        try:
            extra["phase_velocity"][variant] = phase_velocity(p, variant)
        except UmbraError as exc:
            extra["phase_velocity"][variant] = str(exc)
    try:
        extra["refraction_index"] = refraction_index(p)
    except UmbraError as exc:
        extra["refraction_index"] = str(exc)
    return rows, extra


_COMMANDS = {
    "eval": cmd_eval,
    "map": cmd_map,
    "verify": cmd_verify,
    "toda": cmd_toda,
    "oscillator": cmd_oscillator,
    "wave": cmd_wave,
}


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _plain(v):
    if isinstance(v, Fraction):
        v = float(v)
    if isinstance(v, float) and not math.isfinite(v):
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(v, dict):
        return {k: _plain(w) for k, w in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(w) for w in v]
    return v


def _csv_cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Fraction):
        v = float(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render(cfg, rows, extra):
    columns = []
    for r in rows:
        for k in r:
            if k not in columns:
                columns.append(k)
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_csv_cell(r.get(c, "")) for c in columns])
        return buf.getvalue()
    doc = {
        "schema": SCHEMA,
        "meta": {"version": __version__},
        "command": cfg.command,
        # the destination path is not part of the data
        "config": _plain({k: v for k, v in cfg.to_dict().items() if k != "output"}),
        "columns": columns,
        "rows": [_plain(r) for r in rows],
    }
    doc.update({k: _plain(v) for k, v in extra.items()})
    return json.dumps(doc, indent=2) + "\n"


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".umbra-", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

_FLOAT_FLAGS = ("a", "b", "lam", "kappa", "mu", "C1", "C2", "alpha", "beta", "q0",
                "omega", "k", "x0", "p0", "scale", "gamma")
_RANGE_FLAGS = ("x", "t", "n", "m")


def _number_arg(s):
    try:
        return float(Fraction(s))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {s!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--output", "-o", help="write here (atomically) instead of stdout")
    common.add_argument("--tol-profile", dest="tol_profile", choices=sorted(TOLERANCE_PROFILES))
    for name in _FLOAT_FLAGS:
        common.add_argument(f"--{name}", dest=name, type=_number_arg)
    for name in _RANGE_FLAGS:
        common.add_argument(f"--{name}", dest=name)
    common.add_argument("--branch", type=int, choices=(1, -1))
    common.add_argument("--steps", type=int)
    common.add_argument("--interp", type=int)
    common.add_argument("--numer")
    common.add_argument("--denom")
    common.add_argument("--power-k", dest="power_k", type=int)
    common.add_argument("--method")
    common.add_argument("--exact", action="store_true")
    common.add_argument("--strict-domain", dest="strict_domain", action="store_true")

    parser = argparse.ArgumentParser(prog="umbra", description="Umbral calculus on a lattice.")
    parser.add_argument("--version", action="version", version=f"umbra {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    ev = sub.add_parser("eval", parents=[common], help="evaluate a function family on a window")
    ev.add_argument("--family", choices=FAMILIES, default=argparse.SUPPRESS)
    sub.add_parser("map", parents=[common], help="apply the hypergeometric mapping rule")
    vp = sub.add_parser("verify", parents=[common], help="run difference-equation residual suites")
    vp.add_argument("--suite", choices=("all",) + SUITES, default=argparse.SUPPRESS)
    sub.add_parser("toda", parents=[common], help="one-soliton Toda data")
    sub.add_parser("oscillator", parents=[common], help="umbral oscillator trajectory")
    sub.add_parser("wave", parents=[common], help="umbral plane wave samples")
    return parser


def resolve_config(args, environ=None):
    """Merge defaults < environment < config file < flags."""
    environ = os.environ if environ is None else environ
    merged = RunConfig().to_dict()
    if environ.get(ENV_PROFILE):
        merged["tol_profile"] = environ[ENV_PROFILE]
    values = dict(vars(args))
    path = values.pop("config", None)
    if path:
        try:
            with open(path) as fh:
                from_file = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(from_file, dict):
            raise UsageError("config file must hold a JSON object")
        from_file.pop("command", None)
        merged.update(from_file)
    merged.update(values)
    return RunConfig.from_dict(merged).validate()


def run(cfg):
    """Execute ``cfg``; returns (exit status, rendered text, failed verification records)."""
    rows, extra = _COMMANDS[cfg.command](cfg)
    text = render(cfg, rows, extra)
    if cfg.output:
        write_atomic(cfg.output, text)
    failed = extra.get("failed", []) if cfg.command == "verify" else []
    return (1 if failed else 0), text, failed


def _error_record(kind, exc, cfg=None):
    rec = {"schema": SCHEMA, "error": kind, "type": type(exc).__name__, "message": str(exc)}
    if cfg is not None:
        rec["command"] = cfg.command
    return json.dumps(rec, sort_keys=True)


def _glue_negative_values(argv):
    # "--n -5:5" would otherwise read -5:5 as an option
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (tok.startswith("--") and "=" not in tok and nxt is not None
                and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == ".")):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        cfg = resolve_config(args)
    except (UsageError, TypeError, ValueError) as exc:
        print(_error_record("usage", exc), file=sys.stderr)
        return 2
    try:
        status, text, failed = run(cfg)
    except UsageError as exc:
        print(_error_record("usage", exc, cfg), file=sys.stderr)
        return 2
    except (UmbraError, ArithmeticError, ValueError) as exc:
        print(_error_record("numerical", exc, cfg), file=sys.stderr)
        return 1
    if not cfg.output:
        sys.stdout.write(text)
    for r in failed:
        print(json.dumps(_plain(r), sort_keys=True), file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
