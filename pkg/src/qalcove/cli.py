"""Command line front end.

    qalcove qbg --type A --rank 2 --dot
    qalcove chain --type A --rank 2 --lambda 1,-1
    qalcove chevalley --type A --rank 2 --lambda 1,-1 --w s1 --cutoff 2
    qalcove qk --n 5 --k 2 --w 43215 --v 12534
    qalcove verify shellability --type A --rank 3

Exit status: 0 on success, 1 on bad input or a computation error, 2 when a
verification suite reports a failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .alcove import concat_chain, delete_backtracks, is_lambda_chain, lex_chain, lex_chain_antidominant
from .ktheory import chevalley
from .qbg import qbg
from .qk_flag import (
    find_coeff,
    gamma_set,
    is_min_coset_rep,
    min_max_degree,
    qk_chevalley,
    unique_chain_path,
)
from .rootsys import InvariantError, RootSystem, build_root_system
from .suites import SUITES, run_suite

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# -- parsing helpers --------------------------------------------------------------------


def parse_vector(text: str | None, length: int | None = None, what: str = "vector") -> tuple | None:
    if text is None:
        return None
    try:
        vec = tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None
    if length is not None and len(vec) != length:
        raise InputError(f"{what} needs {length} entries, got {len(vec)}")
    return vec


def parse_perm(text: str, n: int | None = None) -> tuple:
    """One-line notation: '43215', or '4,3,2,1,5' for n >= 10; 'e'/'identity' needs n."""
    if text in ("e", "id", "identity"):
        if n is None:
            raise InputError("the identity needs --n")
        return tuple(range(1, n + 1))
    perm = tuple(int(x) for x in text.split(",")) if "," in text else tuple(int(c) for c in text)
    if n is not None and len(perm) != n:
        raise InputError(f"permutation {text!r} has length {len(perm)}, expected {n}")
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise InputError(f"{text!r} is not a permutation")
    return perm


def parse_element(rs: RootSystem, text: str):
    """'e', a reduced word 's1s2' or '1,2', or (type A) a one-line permutation."""
    text = text.strip()
    if text in ("e", "id", "identity"):
        return rs.identity
    if text.startswith("s"):
        word = [int(x) for x in text[1:].split("s")]
        return rs.from_word(word)
    if "," in text and rs.cartan_type != "A":
        return rs.from_word(int(x) for x in text.split(","))
    if rs.cartan_type == "A":
        return rs.from_one_line(parse_perm(text, rs.rank + 1))
    raise InputError(f"cannot read Weyl group element {text!r}; use a word such as s1s2")


def parse_indices(text: str | None, rank: int) -> tuple:
    """1-based simple root indices -> 0-based tuple."""
    if not text:
        return ()
    idx = parse_vector(text, what="--parabolic")
    if any(not 1 <= i <= rank for i in idx):
        raise InputError(f"--parabolic indices must lie in 1..{rank}")
    return tuple(sorted({i - 1 for i in idx}))


def _root_system(args) -> RootSystem:
    if args.type is None or args.rank is None:
        raise InputError("--type and --rank are required")
    return build_root_system(args.type.upper(), args.rank)


def _config(args) -> dict:
    skip = {"func", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _emit_json(config: dict, result) -> str:
    return json.dumps({"config": config, "result": result}, indent=2, sort_keys=True) + "\n"


def _comment_header(config: dict, mark: str = "#") -> str:
    return "".join(f"{mark} {k}: {json.dumps(v)}\n" for k, v in config.items())


# -- commands ---------------------------------------------------------------------------


def cmd_qbg(args) -> tuple:
    rs = _root_system(args)
    J = parse_indices(args.parabolic, rs.rank)
    g = qbg(rs, J, limit=args.limit)
    config = _config(args)
    if args.format == "dot":
        return _comment_header(config, "//") + g.to_dot(), EXIT_OK
    return _emit_json(config, g.to_json()), EXIT_OK


def _pick_chain(rs, lam, kind):
    if kind == "auto":
        kind = "lex" if rs.dominant(lam) else "anti" if all(x <= 0 for x in lam) else "concat-reduced"
    if kind == "lex":
        if not rs.dominant(lam):
            raise InputError("--chain lex needs a dominant weight")
        return kind, lex_chain(rs, lam)
    if kind == "anti":
        if any(x > 0 for x in lam):
            raise InputError("--chain anti needs an anti-dominant weight")
        return kind, lex_chain_antidominant(rs, lam)
    if kind == "concat-reduced":
        return kind, delete_backtracks(concat_chain(rs, lam))
    return kind, concat_chain(rs, lam)


def cmd_chain(args) -> tuple:
    rs = _root_system(args)
    lam = parse_vector(args.weight, rs.rank, "--lambda")
    kind, chain = _pick_chain(rs, lam, args.chain)
    result = {
        "construction": kind,
        "entries": chain.to_json(),
        "reduced": chain.reduced,
        "valid_walk": is_lambda_chain(chain),
    }
    return _emit_json(_config(args), result), EXIT_OK


def cmd_chevalley(args) -> tuple:
    rs = _root_system(args)
    lam = parse_vector(args.weight, rs.rank, "--lambda")
    w = parse_element(rs, args.w)
    xi = parse_vector(args.xi, rs.rank, "--xi") or (0,) * rs.rank
    if args.cutoff < 0:
        raise InputError("--cutoff must be nonnegative")
    kind, chain = _pick_chain(rs, lam, args.chain)
    result = chevalley(rs, lam, w, xi, chain, args.cutoff).to_json()
    result["chain"] = {"construction": kind, "entries": chain.to_json()}
    return _emit_json(_config(args), result), EXIT_OK


def _perm_label(p) -> str:
    return "".join(map(str, p)) if len(p) < 10 else ",".join(map(str, p))


def _qk_rows(n, k, w, elt, equivariant) -> list:
    rows = []
    for (v, d), c in sorted(elt.items()):
        coeff = {",".join(map(str, mu)): x for mu, x in sorted(c.items())} if equivariant else c
        rows.append({"k": k, "w": _perm_label(w), "v": _perm_label(v), "d": list(d), "N": coeff})
    return rows


def _csv(config: dict, n: int, rows: list) -> str:
    buf = io.StringIO()
    buf.write(_comment_header(config))
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "w", "v", *(f"d{i}" for i in range(1, n)), "N"])
    for r in rows:
        n_val = json.dumps(r["N"], sort_keys=True) if isinstance(r["N"], dict) else r["N"]
        writer.writerow([r["k"], r["w"], r["v"], *r["d"], n_val])
    return buf.getvalue()


def cmd_qk(args) -> tuple:
    n, k = args.n, args.k
    if n < 2 or not 1 <= k <= n - 1:
        raise InputError("need n >= 2 and 1 <= k <= n-1")
    config = _config(args)
    if args.degrees:
        if args.w is None:
            raise InputError("--degrees needs --w")
        w = parse_perm(args.w, n)
        mm = min_max_degree(w, k)
        result = {
            "gamma": [list(x) for x in gamma_set(w, k)],
            "min": list(mm[0]) if mm else None,
            "max": list(mm[1]) if mm else None,
        }
        return _emit_json(config, result), EXIT_OK
    if args.sigma is not None:
        if args.v is None:
            raise InputError("--sigma needs --v")
        v, sigma = parse_perm(args.v, n), parse_perm(args.sigma, n)
        if not is_min_coset_rep(sigma, k):
            raise InputError("--sigma must increase on 1..k and on k+1..n")
        found = find_coeff(n, k, v, sigma)
        if found is None:
            rows = []
        else:
            w, d, c = found
            rows = [{"k": k, "w": _perm_label(w), "v": _perm_label(v), "d": list(d), "N": c}]
            if args.format == "json":
                path = unique_chain_path(n, k, w, v, -1)
                rows[0]["path"] = [list(x) for x in path.labels]
                rows[0]["quantum"] = [list(x) for x in path.quantum]
    else:
        if args.w is None:
            raise InputError("qk needs --w (or --v with --sigma)")
        w = parse_perm(args.w, n)
        elt = qk_chevalley(n, k, w, args.equivariant)
        rows = _qk_rows(n, k, w, elt, args.equivariant)
        if args.v is not None:
            v = _perm_label(parse_perm(args.v, n))
            rows = [r for r in rows if r["v"] == v]
    if args.format == "csv":
        return _csv(config, n, rows), EXIT_OK
    return _emit_json(config, rows), EXIT_OK


def cmd_verify(args) -> tuple:
    params: dict = {}
    if args.suite in ("qk-coeff", "qk-degrees"):
        if args.n is None:
            raise InputError(f"{args.suite} needs --n")
        params["n"] = args.n
        if args.k is not None:
            params["ks"] = [args.k]
    else:
        _root_system(args)
        params.update(kind=args.type.upper(), rank=args.rank)
        if args.suite in ("chain-independence", "bijection"):
            if args.weight is None:
                raise InputError(f"{args.suite} needs --lambda")
            params["lam"] = parse_vector(args.weight, args.rank, "--lambda")
            lam = params["lam"]
            if args.suite == "bijection" and not (all(x >= 0 for x in lam) or all(x <= 0 for x in lam)):
                raise InputError("bijection needs a dominant or anti-dominant --lambda")
        elif args.suite == "shellability" and args.weight is not None:
            params["lam"] = parse_vector(args.weight, args.rank, "--lambda")
        if args.suite == "chain-independence":
            params["cutoff"] = args.cutoff
        if args.suite == "yang-baxter":
            params["seed"] = args.seed
        if args.suite == "shortest-weight":
            params["max_coset"] = args.max_coset
    rep = run_suite(args.suite, **params)
    text = _comment_header(_config(args)) + "\n".join(rep.lines()) + "\n"
    return text, EXIT_OK if rep.passed else EXIT_FAILED


# -- parser -----------------------------------------------------------------------------


def _add_rs(p, required=True):
    p.add_argument("--type", choices=["A", "B", "C", "D", "a", "b", "c", "d"], required=required)
    p.add_argument("--rank", type=int, required=required)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qalcove", description="Quantum Bruhat graphs, alcove model expansions and quantum K-theory tables.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("qbg", help="export a quantum Bruhat graph")
    _add_rs(p)
    p.add_argument("--parabolic", help="comma-separated simple root indices J (1-based)")
    p.add_argument("--limit", type=int, default=5000, help="maximum number of vertices")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", dest="format", action="store_const", const="dot")
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    p.set_defaults(func=cmd_qbg, format="json")

    p = sub.add_parser("chain", help="print a lambda-chain")
    _add_rs(p)
    p.add_argument("--lambda", dest="weight", required=True, help="weight in fundamental weight coordinates")
    p.add_argument("--chain", choices=["auto", "lex", "anti", "concat", "concat-reduced"], default="auto")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("chevalley", help="Chevalley expansion in the semi-infinite K-group")
    _add_rs(p)
    p.add_argument("--lambda", dest="weight", required=True)
    p.add_argument("--w", default="e", help="e, a word like s1s2, or a permutation in type A")
    p.add_argument("--xi", help="translation part in simple coroot coordinates")
    p.add_argument("--cutoff", type=int, default=2, help="keep terms of total degree at most this")
    p.add_argument("--chain", choices=["auto", "lex", "anti", "concat", "concat-reduced"], default="auto")
    p.set_defaults(func=cmd_chevalley)

    p = sub.add_parser("qk", help="quantum K-theory Chevalley coefficients of Fl_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--w", help="one-line permutation or 'identity'")
    p.add_argument("--v", help="restrict to this target permutation")
    p.add_argument("--sigma", help="coset representative: report the unique nonzero coefficient")
    p.add_argument("--degrees", action="store_true", help="report minimum and maximum quantum degrees")
    p.add_argument("--equivariant", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_qk)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    _add_rs(p, required=False)
    p.add_argument("--lambda", dest="weight")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--cutoff", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-coset", type=int, default=200)
    p.set_defaults(func=cmd_verify)
    return parser


def _attach_negative_values(argv: list) -> list:
    """Let '--lambda -1,0' through argparse by rewriting it as '--lambda=-1,0'."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--lambda", "--xi"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_attach_negative_values(argv))
    try:
        text, code = args.func(args)
    except (InputError, ValueError, KeyError, InvariantError) as exc:
        print(f"qalcove {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
