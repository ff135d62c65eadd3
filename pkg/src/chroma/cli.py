"""``chroma``: batch Betti numbers, Morse checks and verification reports.

Exit codes: 0 pass, 1 usage or input error, 2 a cap was hit, 3 a check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass

from chroma.complex import DEFAULT_SIMPLEX_CAP, neighborhood_complex
from chroma.errors import CapExceeded
from chroma.graph import read_graph, reduced_exponential
from chroma.homology import betti_gf2, betti_integer
from chroma.morse import DEFAULT_PATH_CAP, greedy_acyclic_matching, morse_report

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_FAIL = 0, 1, 2, 3

COMMANDS = ("betti", "verify", "morse", "oracle-compare")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    n: int | None = None
    m: int | None = None
    graph: str | None = None
    max_dim: int = 3
    coeff: str = "z2"
    paths_cap: int = DEFAULT_PATH_CAP
    simplices_cap: int = DEFAULT_SIMPLEX_CAP
    fmt: str = "json"
    out: str | None = None
    threads: int = 1
    seed: int = 0
    theorem: str = "main"

    def validate(self) -> None:
        for name in ("paths_cap", "simplices_cap", "threads"):
            if getattr(self, name) <= 0:
                raise UsageError(f"{name.replace('_', '-')} must be positive")
        if self.max_dim < 0:
            raise UsageError("max-dim must be nonnegative")
        if self.graph is None and self.family is None and self.command != "verify":
            raise UsageError("give --graph FILE or --family kn-exp --n N --m M")
        if self.graph is not None and self.family is not None:
            raise UsageError("--graph and --family are exclusive")
        if self.family is not None or self.command == "verify":
            if self.n is None or (self.m is None and self.theorem != "thm1"):
                raise UsageError("--n and --m are required")
            if self.n < 1 or (self.m is not None and self.m < 1):
                raise UsageError("--n and --m must be positive")

    def caps(self) -> dict:
        return {"max_dim": self.max_dim, "simplices": self.simplices_cap,
                "paths": self.paths_cap}


def env_caps(text: str | None) -> dict:
    """Parse ``CHROMA_CAPS`` such as ``"simplices=100000,paths=5000,max_dim=4"``."""
    out = {}
    if not text:
        return out
    keys = {"simplices": "simplices_cap", "simplices_cap": "simplices_cap",
            "paths": "paths_cap", "paths_cap": "paths_cap",
            "max_dim": "max_dim", "max-dim": "max_dim"}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        if not sep or key.strip() not in keys:
            raise UsageError(f"bad CHROMA_CAPS entry {item!r}")
        try:
            out[keys[key.strip()]] = int(value)
        except ValueError:
            raise UsageError(f"bad CHROMA_CAPS value {item!r}") from None
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chroma", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--family", choices=["kn-exp"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--graph", metavar="FILE")
    p.add_argument("--max-dim", type=int)
    p.add_argument("--coeff", choices=["z2", "z"], default="z2")
    p.add_argument("--paths-cap", type=int)
    p.add_argument("--simplices-cap", type=int)
    p.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--theorem", choices=["main", "thm1"], default="main")
    return p


def parse_config(argv, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    ns = build_parser().parse_args(argv)
    defaults = env_caps(environ.get("CHROMA_CAPS"))
    cfg = RunConfig(command=ns.command, family=ns.family, n=ns.n, m=ns.m, graph=ns.graph,
                    coeff=ns.coeff, fmt=ns.fmt, out=ns.out, threads=ns.threads,
                    seed=ns.seed, theorem=ns.theorem, **defaults)
    for name in ("max_dim", "paths_cap", "simplices_cap"):
        value = getattr(ns, name)
        if value is not None:
            setattr(cfg, name, value)
    cfg.validate()
    return cfg


def _source(cfg: RunConfig):
    if cfg.graph is not None:
        try:
            g = read_graph(cfg.graph)
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.graph}: {exc.strerror}") from None
        except ValueError as exc:
            raise UsageError(f"{cfg.graph}: {exc}") from None
        return g, {"graph": os.path.basename(cfg.graph)}
    return reduced_exponential(cfg.n, cfg.m), {"family": "kn-exp", "n": cfg.n, "m": cfg.m}


# -- commands -------------------------------------------------------------------

def cmd_betti(cfg: RunConfig):
    g, src = _source(cfg)
    backing = "facets" if cfg.graph is not None else "oracle"
    cx = neighborhood_complex(g, backing)
    fn = betti_gf2 if cfg.coeff == "z2" else betti_integer
    try:
        table = fn(cx, cfg.max_dim, cap=cfg.simplices_cap)
    except CapExceeded as exc:
        return EXIT_CAP, {"command": "betti", "source": src, "caps": cfg.caps(),
                          "inconclusive": True, "error": str(exc)}
    report = {"command": "betti", "source": src, "caps": cfg.caps(), **table.to_dict(),
              "simplex_counts": table.simplex_counts}
    return EXIT_OK, report


def cmd_verify(cfg: RunConfig):
    from chroma.coloring import verify_main, verify_thm1

    try:
        if cfg.theorem == "thm1":
            r = verify_thm1(cfg.n, path_cap=cfg.paths_cap)
            if cfg.n < 4:
                return EXIT_INPUT, {"command": "verify", "theorem": "thm1", **r.to_dict()}
        else:
            if cfg.n < 2 or cfg.m < 2:
                raise UsageError("verify needs n, m >= 2")
            r = verify_main(cfg.n, cfg.m, simplex_cap=cfg.simplices_cap,
                            path_cap=cfg.paths_cap, integer=cfg.coeff == "z")
    except CapExceeded as exc:
        return EXIT_CAP, {"command": "verify", "theorem": cfg.theorem, "caps": cfg.caps(),
                          "inconclusive": True, "error": str(exc)}
    report = {"command": "verify", "theorem": cfg.theorem, "caps": cfg.caps(), **r.to_dict()}
    if r.inconclusive:
        return EXIT_CAP, report
    return (EXIT_OK if r.passed else EXIT_FAIL), report


def cmd_morse(cfg: RunConfig):
    from chroma.coloring import coloring_complex, critical_simplices, enumerate_critical, \
        morse_betti_coloring

    g, src = _source(cfg)
    try:
        if cfg.family is not None:
            if not cfg.m > cfg.n >= 3:
                raise UsageError("the coloring matching needs m > n >= 3")
            cc = coloring_complex(cfg.n, cfg.m)
            crit = critical_simplices(enumerate_critical(cfg.n, cfg.m, cap=cfg.simplices_cap))
            betti = morse_betti_coloring(cfg.n, cfg.m, path_cap=cfg.paths_cap)
            check = None
            if cfg.max_dim >= 0:
                rep = morse_report(cc.complex, cc.matching, cfg.max_dim,
                                   cap=cfg.simplices_cap, path_cap=cfg.paths_cap)
                scanned = {str(d): c for d, c in rep.critical.items()}
                check = {"acyclic_through_dim": cfg.max_dim, "pass": rep.acyclic,
                         "scan_census": scanned}
            report = {"command": "morse", "source": src, "caps": cfg.caps(),
                      "matching": "coloring",
                      "census": [len(c) for c in crit], "betti_z2": betti, "scan": check}
            ok = check is None or (check["pass"] and all(
                int(c) == len(crit[int(d)]) if int(d) < len(crit) else c == 0
                for d, c in check["scan_census"].items()))
        else:
            cx = neighborhood_complex(g, "facets")
            top = max((len(f) for f in cx.facets), default=1) - 1
            matching = greedy_acyclic_matching(cx, random.Random(cfg.seed))
            rep = morse_report(cx, matching, min(top, cfg.max_dim + 1),
                               cap=cfg.simplices_cap, path_cap=cfg.paths_cap)
            report = {"command": "morse", "source": src, "caps": cfg.caps(),
                      "matching": "greedy", "seed": cfg.seed, **rep.to_dict()}
            ok = rep.acyclic
    except CapExceeded as exc:
        return EXIT_CAP, {"command": "morse", "source": src, "caps": cfg.caps(),
                          "inconclusive": True, "error": str(exc)}
    report["pass"] = ok
    return (EXIT_OK if ok else EXIT_FAIL), report


def cmd_oracle_compare(cfg: RunConfig):
    from chroma.coloring import check_matching, critical_simplices, enumerate_critical, \
        morse_betti_coloring

    g, src = _source(cfg)
    cx = neighborhood_complex(g, "facets" if cfg.graph is not None else "oracle")
    report = {"command": "oracle-compare", "source": src, "caps": cfg.caps()}
    try:
        brute = betti_gf2(cx, cfg.max_dim, cap=cfg.simplices_cap)
        report["brute_force"] = brute.betti
        report["computed_up_to"] = cfg.max_dim
        if cfg.family is None or not cfg.m > cfg.n >= 3:
            report["morse"] = None
            report["note"] = ("Morse pipeline applies only to the family with m > n >= 3; "
                              "brute force only")
            report["pass"] = True
            return EXIT_OK, report
        morse = morse_betti_coloring(cfg.n, cfg.m, cfg.max_dim, path_cap=cfg.paths_cap)
        crit = critical_simplices(enumerate_critical(cfg.n, cfg.m))
        valid, acyclic, scanned = check_matching(cfg.n, cfg.m, cfg.max_dim, cfg.simplices_cap)
    except CapExceeded as exc:
        report.update(inconclusive=True, error=str(exc))
        return EXIT_CAP, report
    census = [len(c) for c in crit]
    scan = [len(c) for c in scanned]
    same_cells = all(sorted(scanned[d]) == (sorted(crit[d]) if d < len(crit) else [])
                     for d in range(len(scanned)))
    report.update(morse=morse, census=census, scan_census=scan,
                  matching_valid=valid.ok, matching_acyclic=acyclic.ok,
                  census_matches_scan=same_cells)
    ok = morse == brute.betti and same_cells and valid.ok and acyclic.ok
    report["pass"] = ok
    return (EXIT_OK if ok else EXIT_FAIL), report


HANDLERS = {"betti": cmd_betti, "verify": cmd_verify, "morse": cmd_morse,
            "oracle-compare": cmd_oracle_compare}


# -- output ---------------------------------------------------------------------

def to_csv(report: dict) -> str:
    """Flatten Betti vectors and censuses to ``key,index,value`` rows."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "index", "value"])
    for key in ("betti", "betti_z2", "brute_force", "morse", "census", "scan_census"):
        value = report.get(key)
        if value is None and key == "betti_z2":
            value = report.get("computed", {}).get("betti_z2")
        if isinstance(value, list):
            for i, x in enumerate(value):
                w.writerow([key, i, x])
    if "pass" in report:
        w.writerow(["pass", "", int(bool(report["pass"]))])
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(report)
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def run(argv=None, environ=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        cfg = parse_config(argv, environ)
        code, report = HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"chroma: {exc}", file=stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"chroma: {exc}", file=stderr)
        return EXIT_INPUT
    text = render(report, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if code == EXIT_CAP:
        print(f"chroma: inconclusive, {report.get('error', 'cap reached')}", file=stderr)
    return code


def main() -> None:
    sys.exit(run())
