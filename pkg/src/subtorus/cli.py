"""Command line front end.

Group spec files are line oriented::

    # BS(1,2)
    basis: a
    phi: a -> aa
    bound.max_steps: 64

``phi:`` may be omitted (a bare ``a -> aa`` line works too).  Exit codes:
0 resolved verdict or success, 1 parse / IO / usage error, 2 non-injective
endomorphism, 3 Unresolved verdict or a resource cap hit, 4 a witness fails
to verify.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

from .classify import Bounds, Classification, Verdict, classify, verify_witness
from .endo import parse_endomorphism
from .errors import InputError, NonInjective, ResourceExceeded, SubtorusError, VerificationFailed
from .present import (
    Presentation,
    first_betti,
    invariant_pair_presentation,
    parse_presentation,
    sub_torus_presentation,
)
from .torus import MappingTorus
from .words import STABLE_LETTER, Basis

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_NON_INJECTIVE = 2
EXIT_UNRESOLVED = 3
EXIT_WITNESS = 4

_BOUND_FIELDS = {f.name for f in fields(Bounds)}


@dataclass
class GroupSpec:
    basis: Basis
    phi_lines: list[str]
    bounds: dict = field(default_factory=dict)

    def torus(self) -> MappingTorus:
        return MappingTorus(parse_endomorphism(self.basis, self.phi_lines))

    def canonical_text(self) -> str:
        phi = parse_endomorphism(self.basis, self.phi_lines)
        return f"basis: {self.basis}\n" + "".join(
            f"phi: {x} -> {w or '1'}\n" for x, w in zip(self.basis.letters, phi.images))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:16]


def parse_group_spec(text: str) -> GroupSpec:
    basis = None
    phi_lines = []
    bounds = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("basis:"):
            if basis is not None:
                raise InputError("basis declared twice")
            basis = Basis.of(line[len("basis:"):].strip())
        elif line.startswith("phi:"):
            phi_lines.append(line[len("phi:"):])
        elif line.startswith("bound."):
            key, _, value = line[len("bound."):].partition(":")
            key = key.strip()
            if key not in _BOUND_FIELDS:
                raise InputError(f"unknown bound {key!r}")
            try:
                bounds[key] = int(value)
            except ValueError:
                raise InputError(f"bound {key} needs an integer, got {value.strip()!r}") from None
        elif "->" in line:
            phi_lines.append(line)
        else:
            raise InputError(f"cannot parse group spec line {raw!r}")
    if basis is None:
        raise InputError("group spec has no 'basis:' line")
    return GroupSpec(basis, phi_lines, bounds)


def load_group_spec(path: str) -> GroupSpec:
    with open(path) as fh:
        return parse_group_spec(fh.read())


def bounds_from(spec: GroupSpec, args) -> Bounds:
    b = Bounds(**spec.bounds)
    overrides = {
        "max_steps": getattr(args, "bounds_max_steps", None),
        "max_shift": getattr(args, "bounds_max_shift", None),
        "max_graph": getattr(args, "bounds_max_graph", None),
        "relation_depth": getattr(args, "relation_depth", None),
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(b, key, value)
    return b


def presentation_for(c: Classification):
    if c.verdict is Verdict.SUB_MAPPING_TORUS:
        return sub_torus_presentation(c, verify=False)
    return None


def summary(c: Classification) -> str:
    lines = [f"verdict: {c.verdict}"]
    if c.refinement:
        lines.append(f"refinement: {c.refinement}")
    if c.generator is not None:
        lines.append(f"generator: {c.generator or '1'}")
    if c.fiber_rank is not None:
        lines.append(f"fiber subgroup rank: {c.fiber_rank}")
    if c.pair:
        p = c.pair
        lines.append(f"standard pair: u = {p.u or '1'}, m = {p.m}, v = {p.v} (conjugated by t^{p.conj_exponent})")
    if c.V is not None:
        lines.append(f"V basis: {', '.join(c.V_basis)} (rank {c.V_rank}, shift {c.shift})")
        if c.index is not None:
            lines.append(f"index: {c.index}")
    if c.closure and not c.closure.stabilized:
        lines.append(f"closure exhausted ({c.closure.exhausted_by}); rank trace {c.closure.rank_trace}")
    if c.relation_depth is not None:
        found = f", relation {c.relation}" if c.relation else ", no relation found"
        lines.append(f"relation search depth {c.relation_depth}: {c.relations_tested} words{found}")
    if c.witness_ok is not None:
        lines.append("witness: verified" if c.witness_ok else f"witness: FAILED ({c.witness_error})")
    P = presentation_for(c)
    if P is not None:
        lines.append(f"presentation: {P}")
    return "\n".join(lines)


def verdict_json(c: Classification) -> dict:
    data = c.to_json()
    P = presentation_for(c)
    data["presentation"] = None if P is None else str(P)
    return data


def exit_code(c: Classification) -> int:
    if c.witness_ok is False:
        return EXIT_WITNESS
    return EXIT_UNRESOLVED if c.verdict is Verdict.UNRESOLVED else EXIT_OK


# --- commands --------------------------------------------------------------------

def cmd_classify(args) -> int:
    spec = load_group_spec(args.group)
    G = spec.torus()
    c = classify(G, args.x, args.y, bounds_from(spec, args))
    if args.json:
        print(json.dumps(verdict_json(c), indent=2))
    else:
        print(summary(c))
    return exit_code(c)


def cmd_nf(args) -> int:
    G = load_group_spec(args.group).torus()
    nf = G.normal_form(args.word)
    if args.json:
        print(json.dumps({"p": nf.p, "z": nf.z.letters, "q": nf.q, "text": str(nf)}))
    else:
        print(nf)
    return EXIT_OK


def cmd_present(args) -> int:
    with open(args.verdict) as fh:
        data = json.load(fh)
    c = Classification.from_json(data)
    if c.verdict is Verdict.SUB_MAPPING_TORUS:
        verify_witness(c.group, c)
        P = sub_torus_presentation(c, verify=False)
    elif c.verdict is Verdict.FREE_RANK2:
        ip = invariant_pair_presentation(c) if c.pair else None
        P = ip.presentation if ip else Presentation(("x", "y"), ())
    elif c.verdict is Verdict.TRIVIAL_OR_CYCLIC:
        P = Presentation(("x",) if c.generator else (), ())
    else:
        print("no presentation for an Unresolved verdict", file=sys.stderr)
        return EXIT_UNRESOLVED
    print(json.dumps(P.to_json()) if args.json else P)
    return EXIT_OK


def load_presentation(path: str) -> Presentation:
    with open(path) as fh:
        text = fh.read().strip()
    if text.startswith("{"):
        data = json.loads(text)
        if "verdict" in data:
            if not data.get("presentation"):
                raise InputError("verdict file carries no presentation")
            return parse_presentation(data["presentation"])
        return Presentation.from_json(data)
    return parse_presentation(text)


def cmd_betti(args) -> int:
    print(first_betti(load_presentation(args.presentation)))
    return EXIT_OK


def random_word(rng: random.Random, basis: Basis, length: int) -> str:
    alphabet = list(basis.signed_letters) + [STABLE_LETTER, STABLE_LETTER.upper()]
    return "".join(rng.choice(alphabet) for _ in range(length))


def _batch_task(task):
    spec_text, bounds, seed, index, length, timing = task
    spec = parse_group_spec(spec_text)
    G = spec.torus()
    rng = random.Random(f"{seed}:{index}")
    x = random_word(rng, G.basis, length)
    y = random_word(rng, G.basis, length)
    record = {"seed": seed, "index": index, "group": spec.digest(), "generators": [x, y]}
    start = time.perf_counter()
    try:
        c = classify(G, x, y, Bounds(**bounds))
        record["verdict"] = c.to_json()
        tag = c.verdict.value
        if c.witness_ok is False:
            tag = "VerificationFailed"
    except SubtorusError as exc:
        record["error"] = f"{type(exc).__name__}: {exc}"
        tag = "Error"
    if timing:
        record["wall_time"] = round(time.perf_counter() - start, 6)
    record["tag"] = tag
    return record


def run_batch(spec: GroupSpec, n: int, seed: int, bounds: Bounds, length: int = 4,
              workers: int = 1, timing: bool = False) -> list[dict]:
    if n < 1:
        raise InputError("batch size must be >= 1")
    spec.torus()  # reject non-injective input before fanning out
    text = spec.canonical_text()
    tasks = [(text, bounds.__dict__.copy(), seed, i, length, timing) for i in range(n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_batch_task, tasks))
    return [_batch_task(t) for t in tasks]


def summary_table(records: list[dict]) -> str:
    counts = Counter(r["tag"] for r in records)
    width = max(len(k) for k in counts) if counts else 5
    rows = [f"{tag:<{width}}  {counts[tag]:>6}" for tag in sorted(counts)]
    rows.append(f"{'total':<{width}}  {len(records):>6}")
    return "\n".join(rows)


def cmd_batch(args) -> int:
    spec = load_group_spec(args.group)
    records = run_batch(spec, args.n, args.seed, bounds_from(spec, args), args.length,
                        args.workers, args.timing)
    lines = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    if args.out:
        with open(args.out, "a") as fh:
            fh.write(lines)
        print(summary_table(records))
    else:
        sys.stdout.write(lines)
        print(summary_table(records), file=sys.stderr)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors share the parse-error exit code; 2 means non-injective here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="subtorus", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def bound_flags(p):
        p.add_argument("--bounds-max-steps", type=int)
        p.add_argument("--bounds-max-shift", type=int)
        p.add_argument("--bounds-max-graph", type=int)
        p.add_argument("--relation-depth", type=int)

    p = sub.add_parser("classify", help="classify the subgroup <x, y>")
    p.add_argument("group")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0, help="accepted for symmetry; classification is deterministic")
    bound_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("nf", help="Britton normal form of a torus word")
    p.add_argument("group")
    p.add_argument("word")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("present", help="presentation from a verdict JSON file")
    p.add_argument("verdict")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("betti", help="first Betti number of a presentation file")
    p.add_argument("presentation")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("batch", help="classify random generator pairs")
    p.add_argument("group")
    p.add_argument("-n", "--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--length", type=int, default=4, help="letters per random generator")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="append JSON lines here instead of stdout")
    p.add_argument("--timing", action="store_true", help="record wall time (breaks byte-identical output)")
    bound_flags(p)
    p.set_defaults(func=cmd_batch)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    try:
        return args.func(args)
    except NonInjective as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NON_INJECTIVE
    except (InputError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationFailed as exc:
        print(f"error: witness failed: {exc}", file=sys.stderr)
        return EXIT_WITNESS
    except ResourceExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNRESOLVED


if __name__ == "__main__":
    sys.exit(main())
