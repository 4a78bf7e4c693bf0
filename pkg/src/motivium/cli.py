"""Command-line front end.

Exit codes: 0 success or PASS, 1 FAIL verdict, 2 malformed input,
3 input that violates a mathematical invariant.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from . import jsonio
from .artin import ArtinMotive, GaloisContext, picard_order
from .groups import GroupOrderError
from .jsonio import SchemaError
from .modrep import decompose, induce, restrict, tensor
from .motexpr import higher_trace_compare, motive_isomorphic
from .titsdex import condition_i_check, motivic_equiv_check

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_INVARIANT = 0, 1, 2, 3

PACKAGED_FIXTURES = Path(__file__).with_name("fixtures")


@dataclass
class RunConfig:
    command: str
    inputs: list[str]
    prime: int | None = None
    seed: int = 0
    out: str | None = None
    quiet: bool = False
    decompose: bool = False
    extra: dict = field(default_factory=dict)


def fixtures_root() -> Path:
    env = os.environ.get("MOTIVIUM_FIXTURES")
    return Path(env) if env else PACKAGED_FIXTURES


def resolve(path: str) -> Path:
    """Path as given, else relative to the fixtures root."""
    p = Path(path)
    if p.exists():
        return p
    for root in (fixtures_root(), PACKAGED_FIXTURES):
        q = root / path
        if q.exists():
            return q
    raise SchemaError(f"input file {path!r} not found")


class _Inputs:
    def __init__(self):
        self.hashes: list[dict] = []

    def load(self, path: str):
        obj, raw = jsonio.load_json_file(resolve(path))
        self.hashes.append({"name": Path(path).name, "sha256": jsonio.sha256_bytes(raw)})
        return obj

    def inline_or_file(self, text: str):
        if text.lstrip().startswith(("{", "[")):
            raw = text.encode()
            self.hashes.append({"name": "<inline>", "sha256": jsonio.sha256_bytes(raw)})
            return jsonio.parse_json(text)
        return self.load(text)


def _module_report(M, seed: int, chain: bool) -> dict:
    out = {"module": M.to_json()}
    if chain:
        out["decomposition"] = decompose(M, seed).to_json()
    return out


def cmd_decompose(cfg: RunConfig, io: _Inputs) -> tuple[dict, int]:
    M = jsonio.module_from_json(io.load(cfg.inputs[0]), prime=cfg.prime)
    return decompose(M, cfg.seed).to_json(), EXIT_OK


def cmd_tensor(cfg: RunConfig, io: _Inputs) -> tuple[dict, int]:
    A = jsonio.module_from_json(io.load(cfg.inputs[0]), prime=cfg.prime)
    B = jsonio.module_from_json(io.load(cfg.inputs[1]), prime=cfg.prime, group=A.group)
    return _module_report(tensor(A, B), cfg.seed, cfg.decompose), EXIT_OK


def cmd_induce(cfg: RunConfig, io: _Inputs) -> tuple[dict, int]:
    M = jsonio.module_from_json(io.load(cfg.inputs[0]), prime=cfg.prime)
    G = jsonio.group_from_json(io.inline_or_file(cfg.extra["group"]), "--group")
    if G.degree != M.group.degree or not M.group.is_subgroup_of(G):
        raise SchemaError("module group is not a subgroup of the target group", "--group")
    return _module_report(induce(M, G), cfg.seed, cfg.decompose), EXIT_OK


def cmd_restrict(cfg: RunConfig, io: _Inputs) -> tuple[dict, int]:
    M = jsonio.module_from_json(io.load(cfg.inputs[0]), prime=cfg.prime)
    gens = io.inline_or_file(cfg.extra["subgroup"])
    H = M.group.subgroup(jsonio.subgroup_gens(gens, M.group, "--subgroup"))
    return _module_report(restrict(M, H), cfg.seed, cfg.decompose), EXIT_OK


def cmd_picard_order(cfg: RunConfig, io: _Inputs) -> tuple[dict, int]:
    M = jsonio.module_from_json(io.load(cfg.inputs[0]), prime=cfg.prime)
    order = picard_order(ArtinMotive(GaloisContext(M.group, {}), M))
    return {"picard_order": order, "invertible": order is not None}, EXIT_OK


def cmd_tits_equiv(cfg: RunConfig, io: _Inputs) -> tuple[dict, int]:
    ctx, G1, G2, phi, tau0 = jsonio.tits_bundle_from_json(io.load(cfg.inputs[0]))
    mode = cfg.extra.get("mode") or "motivic"
    if mode == "condition-i":
        verdict = condition_i_check(G1, G2, phi, tau0)
    else:
        verdict = motivic_equiv_check(G1, G2, phi)
    report = verdict.to_json()
    report["mode"] = mode
    return report, EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_trace_compare(cfg: RunConfig, io: _Inputs) -> tuple[dict, int]:
    ctx, preorder, M, N = jsonio.motive_bundle_from_json(io.load(cfg.inputs[0]), prime=cfg.prime)
    verdict = higher_trace_compare(M, N, report=True)
    report = verdict.to_json()
    report["motive_isomorphic"] = motive_isomorphic(M, N)
    return report, EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_validate(cfg: RunConfig, io: _Inputs) -> tuple[dict, int]:
    obj = io.load(cfg.inputs[0])
    kind = jsonio.detect_kind(obj)
    if kind == "module":
        jsonio.module_from_json(obj, prime=cfg.prime)
    elif kind == "group":
        jsonio.group_from_json(obj, "")
    elif kind == "context":
        jsonio.context_from_json(obj, "")
    elif kind == "tits-bundle":
        jsonio.tits_bundle_from_json(obj)
    else:
        jsonio.motive_bundle_from_json(obj, prime=cfg.prime)
    return {"kind": kind, "valid": True}, EXIT_OK


COMMANDS = {
    "decompose": (cmd_decompose, 1),
    "tensor": (cmd_tensor, 2),
    "induce": (cmd_induce, 1),
    "restrict": (cmd_restrict, 1),
    "picard-order": (cmd_picard_order, 1),
    "tits-equiv": (cmd_tits_equiv, 1),
    "trace-compare": (cmd_trace_compare, 1),
    "validate": (cmd_validate, 1),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=None, help="prime p (required when inputs omit it)")
    common.add_argument("--seed", type=int, default=0, help="seed for all randomised steps")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--quiet", action="store_true", help="suppress stdout and diagnostics")
    common.add_argument("--decompose", action="store_true", help="also decompose the resulting module")

    parser = argparse.ArgumentParser(prog="motivium", description="Artin motives and Tits indexes over finite lattices")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, nargs) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("inputs", nargs=nargs, metavar="JSON")
        if name == "induce":
            sp.add_argument("--group", required=True, help="target group: JSON file or inline JSON")
        if name == "restrict":
            sp.add_argument("--subgroup", required=True, help="subgroup generators: JSON file or inline JSON")
        if name == "tits-equiv":
            sp.add_argument("--mode", choices=["motivic", "condition-i"], default="motivic")
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCHEMA if exc.code else EXIT_OK
    cfg = RunConfig(
        command=args.command,
        inputs=list(args.inputs),
        prime=args.prime,
        seed=args.seed,
        out=args.out,
        quiet=args.quiet,
        decompose=args.decompose,
        extra={k: getattr(args, k, None) for k in ("group", "subgroup", "mode")},
    )

    def fail(code, kind, exc):
        if not cfg.quiet:
            print(f"motivium: {kind}: {exc}", file=stderr)
        return code

    io = _Inputs()
    handler, _ = COMMANDS[cfg.command]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore" if cfg.quiet else "default")
            if cfg.prime is not None and not jsonio.is_prime(cfg.prime):
                raise SchemaError(f"{cfg.prime} is not prime", "--prime")
            result, code = handler(cfg, io)
    except (SchemaError, GroupOrderError) as exc:
        return fail(EXIT_SCHEMA, "input error", exc)
    except ValueError as exc:
        return fail(EXIT_INVARIANT, "invariant violation", exc)
    except OSError as exc:
        return fail(EXIT_SCHEMA, "input error", exc)

    report = {"command": cfg.command, "seed": cfg.seed, "inputs": io.hashes, "result": result}
    text = jsonio.dumps(report)
    if cfg.out:
        Path(cfg.out).write_text(text)
    elif not cfg.quiet:
        stdout.write(text)
    return code


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
