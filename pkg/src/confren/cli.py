"""Command-line front end.

Every subcommand writes JSON lines (one record per checked object) and a
final summary record.  Exit codes: 0 all checks pass, 1 an invariant was
violated, 2 usage error or unsupported (D, n).
"""

import argparse
import json
import sys

from .errors import ConfrenError, UnsupportedDomainError, UsageError, ParseError, ResourceError
from .scalar import Q, coeff_str, parse_coeff

__all__ = ["main", "RunConfig", "load_config"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_DEFAULTS = {
    "dim": 1, "points": 2, "pole_bound": 3, "seed": 0, "probes": 20,
    "scale_exponent": "0", "radius": None, "max_degree": 3, "max_pole": 3, "out": None,
    "wedge_sign": -1,
}
_INT_KEYS = ("dim", "points", "pole_bound", "seed", "probes", "max_degree", "max_pole", "wedge_sign")


class RunConfig:
    """Resolved run parameters (flags override the config file)."""

    def __init__(self, values):
        self.values = dict(values)
        for k in _INT_KEYS:
            try:
                self.values[k] = int(self.values[k])
            except (TypeError, ValueError):
                raise UsageError("%s must be an integer (got %r)" % (k, self.values[k]))
        try:
            self.values["scale_exponent"] = parse_coeff(str(self.values["scale_exponent"]))
            if self.values["radius"] is not None:
                self.values["radius"] = parse_coeff(str(self.values["radius"]))
        except ConfrenError as e:
            raise UsageError("bad scheme parameter: %s" % e)
        if self.values["probes"] < 0 or self.values["pole_bound"] < 1:
            raise UsageError("budgets must be positive")
        if self.values["dim"] < 1 or self.values["points"] < 2:
            raise UsageError("need dim >= 1 and points >= 2")
        if self.values["wedge_sign"] not in (1, -1):
            raise UsageError("wedge_sign must be 1 or -1")

    def __getattr__(self, k):
        try:
            return self.__dict__["values"][k]
        except KeyError:
            raise AttributeError(k)

    @property
    def S(self):
        return tuple(range(1, self.points + 1))

    def scheme(self):
        from .schemes import Scheme
        if self.scale_exponent == 0 and self.radius is None:
            from .schemes import CANONICAL
            return CANONICAL
        return Scheme(scale_exponent=self.scale_exponent, radius=self.radius, name="configured")

    def as_dict(self):
        out = {}
        for k, v in sorted(self.values.items()):
            if k == "out":
                continue
            out[k] = coeff_str(v) if k in ("scale_exponent", "radius") and v is not None else v
        return out


def load_config(path):
    """Flat key=value file; '#' starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise UsageError("cannot read config file: %s" % e)
    for i, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError("config line %d is not key=value" % i)
        k, v = (t.strip() for t in line.split("=", 1))
        k = k.replace("-", "_")
        if k not in _DEFAULTS:
            raise UsageError("unknown config key %r on line %d" % (k, i))
        out[k] = v
    return out


def _dump(rec):
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


class _Report:
    def __init__(self, command, cfg):
        self.command = command
        self.cfg = cfg
        self.lines = []
        self.checked = 0
        self.failed = 0

    def record(self, rec, ok=True):
        rec = dict(rec)
        rec["ok"] = bool(ok)
        self.checked += 1
        if not ok:
            self.failed += 1
        self.lines.append(_dump(rec))

    def finish(self):
        summary = {"kind": "summary", "command": self.command, "config": self.cfg.as_dict(),
                   "checked": self.checked, "failed": self.failed, "ok": self.failed == 0}
        self.lines.append(_dump(summary))
        return "\n".join(self.lines) + "\n", (EXIT_OK if self.failed == 0 else EXIT_FAIL)


def _probes(cfg, S=None):
    from .probes import probe_set
    S = cfg.S if S is None else S
    return probe_set(cfg.dim, S, max_degree=cfg.max_degree, max_pole=cfg.max_pole,
                     n_random=cfg.probes, seed=cfg.seed)


def _need(cfg, ok_pairs):
    if (cfg.dim, cfg.points) not in ok_pairs:
        raise UnsupportedDomainError("(D, n) = (%d, %d) is not supported by this command"
                                     % (cfg.dim, cfg.points))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_degrees(cfg, args):
    from .textio import parse_element, to_text
    if args.input is None:
        raise UsageError("degrees needs an input file")
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError("cannot read input: %s" % e)
    rep = _Report("degrees", cfg)
    for i, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        G = parse_element(line, cfg.dim, cfg.S, line=i)
        parts = [h for h, _ in G.homogeneous_parts()]
        dd = G.divergence_degree()
        rep.record({"kind": "degrees", "line": i, "element": to_text(G),
                    "devd": dd if not G.is_zero() else None, "homogeneous_degrees": parts})
    return rep


def cmd_cohomology(cfg, args):
    from .derham import cohomology_dims
    if cfg.dim != 1:
        _need(cfg, ())
    if cfg.points > 4:
        _need(cfg, ())
    rep = _Report("cohomology", cfg)
    n = cfg.points
    N = cfg.dim * (n - 1)
    # Orlik-Solomon: prod_{k=1}^{n-1} (1 + k t)
    expected = [1]
    for k in range(1, n):
        expected = [a + k * b for a, b in zip(expected + [0], [0] + expected)]
    dims = []
    for m in range(N + 1):
        r = cohomology_dims(cfg.dim, n, m, cfg.pole_bound)
        dims.append(r.dim_H)
        rec = r.as_dict()
        rec.update(kind="cohomology", expected=expected[m])
        rep.record(rec, ok=(r.dim_H == expected[m]))
    return rep


def _gamma_forms(cfg):
    from .cocycles import gamma_form
    _need(cfg, ((1, 2), (1, 3), (2, 2)))
    sch = cfg.scheme()
    return {k: gamma_form(cfg.dim, k, sch) for k in range(2, cfg.points + 1)}


def cmd_cocycle(cfg, args):
    gam = _gamma_forms(cfg)
    G_n = gam[cfg.points]
    rep = _Report("cocycle", cfg)
    for G in _probes(cfg):
        vals = {",".join(map(str, I)): coeff_str(v) for I, v in G_n.evaluate(G).items() if v != 0}
        bad = any(F.check_threshold([G]) is not None for F in G_n.components.values())
        rep.record({"kind": "cocycle", "probe": str(G), "values": vals}, ok=not bad)
    return rep


def cmd_check_closure(cfg, args):
    from .cocycles import check_cohomological_eq
    gam = _gamma_forms(cfg)
    rep = _Report("check-closure", cfg)
    w = check_cohomological_eq(gam, cfg.points, _probes(cfg), sign=cfg.wedge_sign)
    rec = w.as_dict()
    rec["kind"] = "cohomological-equation"
    rec["D"] = cfg.dim
    rep.record(rec, ok=w.ok)
    return rep


def cmd_scheme_change(cfg, args):
    from .schemes import CANONICAL, q_map_2, extend_homogeneous, gamma_functional_2
    _need(cfg, ((1, 2), (1, 3), (2, 2)))
    new = cfg.scheme()
    rep = _Report("scheme-change", cfg)
    probes = _probes(cfg)
    if cfg.points == 2:
        zero = (0,) * cfg.dim
        gam = [gamma_functional_2(cfg.dim, xi, CANONICAL) for xi in range(cfg.dim)]
        gam2 = [gamma_functional_2(cfg.dim, xi, new) for xi in range(cfg.dim)]
        for G in probes:
            Qg = q_map_2(G, CANONICAL, new)
            lhs = extend_homogeneous(G, new)
            rhs = extend_homogeneous(G, CANONICAL)
            ok = lhs.u == rhs.u and lhs.delta == rhs.delta + Qg
            for xi in range(cfg.dim):
                d = gam2[xi](G) - gam[xi](G)
                ok = ok and d == -q_map_2(G.partial(xi), CANONICAL, new).coefficient(zero)
            rep.record({"kind": "scheme-change", "probe": str(G), "Q": Qg.to_json()}, ok=ok)
    else:
        from .chain1d import chenren_check_3, q3_map
        for G in probes:
            lhs, rhs = chenren_check_3(G, CANONICAL, new)
            rep.record({"kind": "scheme-change", "probe": str(G),
                        "Q": q3_map(G, CANONICAL, new).to_json()}, ok=(lhs == rhs))
    return rep


def cmd_urg(cfg, args):
    from .urg import (random_system, check_identity, check_associativity, check_antisymmetry,
                      check_jacobi)
    if cfg.points > 4:
        _need(cfg, ())
    n_max = cfg.points
    if n_max < 3:
        raise UsageError("urg needs points >= 3")
    rep = _Report("urg", cfg)
    probes = []
    from .probes import random_element
    for n in range(2, n_max + 1):
        S = tuple(range(1, n + 1))
        for s in range(cfg.probes):
            probes.append(random_element(cfg.dim, S, seed=cfg.seed * 1000 + 10 * n + s,
                                         terms=2, max_degree=2, max_pole=cfg.max_pole))
    systems = [random_system(cfg.dim, n_max, cfg.seed * 100 + i) for i in range(3)]
    checks = [
        ("identity", check_identity(systems[0], probes)),
        ("associativity", check_associativity(systems[0], systems[1], systems[2], probes)),
        ("antisymmetry", check_antisymmetry(systems[0], systems[1], probes)),
        ("jacobi", check_jacobi(systems[0], systems[1], systems[2], probes)),
    ]
    for name, bad in checks:
        rec = {"kind": "urg", "check": name, "probes": len(probes)}
        if bad is not None:
            rec["witness"] = str(bad[0])
        rep.record(rec, ok=bad is None)
    return rep


COMMANDS = {
    "degrees": cmd_degrees,
    "cohomology": cmd_cohomology,
    "cocycle": cmd_cocycle,
    "check-closure": cmd_check_closure,
    "scheme-change": cmd_scheme_change,
    "urg": cmd_urg,
}


def build_parser():
    p = argparse.ArgumentParser(prog="confren", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        if name == "degrees":
            s.add_argument("input", nargs="?", help="file with one element per line")
        s.add_argument("--config", help="key=value file; flags override it")
        s.add_argument("--dim", type=int)
        s.add_argument("--points", type=int)
        s.add_argument("--pole-bound", dest="pole_bound", type=int)
        s.add_argument("--seed", type=int)
        s.add_argument("--probes", type=int)
        s.add_argument("--scale-exponent", dest="scale_exponent")
        s.add_argument("--radius")
        s.add_argument("--max-degree", dest="max_degree", type=int)
        s.add_argument("--max-pole", dest="max_pole", type=int)
        s.add_argument("--out")
        if name == "check-closure":
            s.add_argument("--wedge-sign", dest="wedge_sign", type=int,
                           help="orientation sign of the wedge product (default -1)")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        values = dict(_DEFAULTS)
        if args.config:
            values.update(load_config(args.config))
        for k in _DEFAULTS:
            v = getattr(args, k, None)
            if v is not None:
                values[k] = v
        cfg = RunConfig(values)
        rep = COMMANDS[args.command](cfg, args)
        text, code = rep.finish()
    except (UsageError, ParseError, UnsupportedDomainError, ResourceError) as e:
        sys.stderr.write("confren: error: %s\n" % e)
        return EXIT_USAGE
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            sys.stderr.write("confren: error: %s\n" % e)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
