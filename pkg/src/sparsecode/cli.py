"""``sparsecode`` command line: generate, inspect, transform, test, correct, verify.

Exit codes: 0 when every hard row passes, 1 on a failed assertion, 2 on a
usage or parse error, 3 when an enumeration guard is exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import itertools
import json
import sys
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import __version__
from .bounds import (BoundsParams, claim5_sum, lemma6_report, lemma8_check, lemma9_sum_check,
                     lemma10_check, select_test_weight, verify_prop4)
from .code import (AllZeroProfile, LinearCode, Word, distance_to_code, dual_slice, profile,
                   random_code, span_with, weight_distribution)
from .codefile import code_to_json, fixture_path, load_code, parse_word, write_atomic
from .corrector import (CorrectorInstance, correction_error_exact, correction_error_mc,
                        corrector_run, lemma13_report, lemma14_bound_check, prop11_check,
                        prop12_check)
from .errors import (BiasUnreachable, MacWilliamsViolation, NoCorrectionVectors, ParseError,
                     ScanTooLarge, SparseCodeError)
from .field import FieldSpec
from .krawtchouk import macwilliams_transform, verify_krawtchouk_properties
from .report import (ReportRow, VerificationReport, rational_from_json, rational_to_json,
                     report_from_json, report_to_csv, report_to_json)
from .tester import (QueryCountingOracle, RandomSource, SoundnessProfile,
                     rejection_probability_exact, rejection_probability_mc, soundness_profile, tester_new, tester_run)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
GEN_RETRIES = 200
SOUNDNESS_SCAN_MAX = 20_000
PROFILE_PRINT_MAX = 10**6


class UsageError(SparseCodeError, ValueError):
    pass


# -- documents -------------------------------------------------------------------

def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return rational_to_json(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


def _rationals_back(x: Any) -> Any:
    if isinstance(x, dict):
        if set(x) >= {"num", "den"} and set(x) <= {"num", "den", "float"}:
            return rational_from_json(x)
        return {k: _rationals_back(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_rationals_back(v) for v in x]
    return x


@dataclass
class ExperimentConfig:
    """Echo of everything a run depended on; rationals stay exact."""

    command: str
    values: dict[str, Any] = field(default_factory=dict)

    def set(self, **kw: Any) -> None:
        self.values.update(kw)

    def to_json(self) -> dict[str, Any]:
        return {"command": self.command, **_jsonable(self.values)}


@dataclass
class ReportDocument:
    command: str
    config: ExperimentConfig
    rows: VerificationReport = field(default_factory=VerificationReport)
    exact: dict[str, Any] = field(default_factory=dict)
    montecarlo: list[dict[str, Any]] = field(default_factory=list)
    tables: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    error: str | None = None
    failed_row: str | None = None
    timestamp: str | None = None
    tool_version: str = __version__

    @property
    def ok(self) -> bool:
        return self.error is None and self.rows.ok

    def add_mc(self, label: str, est) -> None:
        self.montecarlo.append({"label": label, "estimate": est.estimate,
                                "stderr": est.stderr, "trials": est.trials, "seed": est.seed})

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"tool": "sparsecode", "toolVersion": self.tool_version,
                               "command": self.command}
        if self.timestamp is not None:
            doc["timestamp"] = self.timestamp
        doc["config"] = self.config.to_json()
        doc["summary"] = {
            "ok": self.ok,
            "rows": len(self.rows),
            "hardFailures": [r.check for r in self.rows.hard_failures],
            "informationalFailures": len([r for r in self.rows.failures if not r.hard]),
            "gated": len([r for r in self.rows if r.passed is None]),
        }
        doc["error"] = self.error
        if self.failed_row is not None:
            doc["failedRow"] = self.failed_row
        doc["warnings"] = list(self.warnings)
        doc["exact"] = _jsonable(self.exact)
        doc["montecarlo"] = _jsonable(self.montecarlo)
        doc["tables"] = _jsonable(self.tables)
        doc["rows"] = report_to_json(self.rows)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        try:
            config = dict(obj["config"])
            command = config.pop("command")
            return cls(
                command=obj["command"],
                config=ExperimentConfig(command, _rationals_back(config)),
                rows=report_from_json(obj["rows"]),
                exact=_rationals_back(obj["exact"]),
                montecarlo=_rationals_back(obj["montecarlo"]),
                tables=_rationals_back(obj["tables"]),
                warnings=list(obj.get("warnings", [])),
                error=obj.get("error"),
                failed_row=obj.get("failedRow"),
                timestamp=obj.get("timestamp"),
                tool_version=obj["toolVersion"],
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"report document missing or malformed field {exc}") from exc


def load_report(path) -> ReportDocument:
    with open(path) as fh:
        return ReportDocument.from_json(fh.read())


@contextlib.contextmanager
def _row(doc: ReportDocument, name: str):
    """Attach the row name to any guard overflow raised inside the block."""
    try:
        yield
    except ScanTooLarge as exc:
        doc.failed_row = name
        raise ScanTooLarge(f"{name}: {exc}") from exc


# -- argument handling -----------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _k_value(text: str) -> int | str:
    if text == "auto":
        return text
    try:
        k = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("k must be a positive integer or 'auto'") from exc
    if k < 1:
        raise argparse.ArgumentTypeError("k must be positive")
    return k


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--in", dest="infile", metavar="PATH", help="code file (JSON)")
    p.add_argument("--fixture", choices=["repetition"], help="bundled code instead of --in")
    p.add_argument("--out", metavar="PATH", help="write here instead of stdout (atomic)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--no-timestamp", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    return p


def _params_group(p: argparse.ArgumentParser) -> None:
    d = BoundsParams()
    p.add_argument("--t", type=_rational, default=d.t)
    p.add_argument("--gamma", type=_rational, default=d.gamma)
    p.add_argument("--c", type=_rational, default=d.c)
    p.add_argument("--delta", type=_rational, default=d.delta)
    p.add_argument("--tau", type=_rational, default=d.tau)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparsecode",
                                     description="Local testing and self-correction workbench.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    g = sub.add_parser("gen", parents=[common], help="random code file")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--max-bias", type=_rational)
    g.add_argument("--retries", type=int, default=GEN_RETRIES)

    sub.add_parser("inspect", parents=[common], help="profile of a code")

    m = sub.add_parser("macwilliams", parents=[common], help="weight tables and dual counts")
    m.add_argument("--kmax", type=int)

    t = sub.add_parser("test", parents=[common], help="run the dual-sampling tester")
    t.add_argument("--k", type=_k_value, default="auto")
    t.add_argument("--word", help="word as '1,0,2' or a JSON file; default random at distance")
    t.add_argument("--trials", type=int, default=10_000)
    _params_group(t)

    c = sub.add_parser("correct", parents=[common], help="run the self-corrector")
    c.add_argument("--k", type=_k_value, default="auto")
    c.add_argument("--index", type=int, help="coordinate to correct; default every coordinate")
    c.add_argument("--errors", help="corruption as 'pos:value,...' (added to the codeword)")
    c.add_argument("--truth", help="codeword as '1,1,1'; default random codeword")
    c.add_argument("--trials", type=int, default=10_000)
    _params_group(c)

    v = sub.add_parser("verify", parents=[common], help="full exact verification report")
    v.add_argument("--q", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--kmax", type=int)
    v.add_argument("--words", type=int, default=2, help="seeded non-codewords for word-level rows")
    _params_group(v)
    return parser


def _params(args) -> BoundsParams:
    try:
        return BoundsParams(t=args.t, gamma=args.gamma, c=args.c, delta=args.delta, tau=args.tau)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _params_echo(p: BoundsParams) -> dict[str, Fraction]:
    return {"t": p.t, "gamma": p.gamma, "c": p.c, "delta": p.delta, "tau": p.tau,
            "gammaPrime": p.gamma_prime}


def _load(args, required: bool = True) -> tuple[LinearCode | None, str | None]:
    if args.infile and args.fixture:
        raise UsageError("give either --in or --fixture, not both")
    if args.fixture:
        return load_code(fixture_path(args.fixture)), f"fixture:{args.fixture}"
    if args.infile:
        return load_code(args.infile), args.infile
    if required:
        raise UsageError("a code is required (--in PATH or --fixture NAME)")
    return None, None


def _resolve_k(doc: ReportDocument, args, params: BoundsParams, code: LinearCode) -> int:
    k0 = select_test_weight(params, code.q)
    k = k0 if args.k == "auto" else args.k
    doc.config.set(k=k, kRequested=args.k, kTheorem=k0)
    if k > code.n:
        raise UsageError(f"k={k} exceeds the block length n={code.n}")
    if k < k0:
        doc.warnings.append(f"k={k} is below k0={k0}; theorem-level guarantees need k >= k0")
    return k


def _random_word_at_distance(code: LinearCode, errors: int, rng: RandomSource) -> tuple[Word, Word]:
    """Random codeword plus ``errors`` distinct positions with uniform nonzero offsets."""
    q, n = code.q, code.n
    g = rng.generator
    coeffs = g.integers(0, q, size=code.dimension)
    truth = (coeffs @ code.generators) % q if code.dimension else np.zeros(n, dtype=np.int64)
    pos = g.choice(n, size=errors, replace=False)
    v = truth.copy()
    v[pos] = (v[pos] + g.integers(1, q, size=errors)) % q
    return Word.from_array(code.field, v), Word.from_array(code.field, truth)


def _profile_block(code: LinearCode) -> dict[str, Any]:
    prof = profile(code)
    block: dict[str, Any] = {"n": prof.n, "q": prof.q, "size": prof.size,
                             "dimension": prof.dimension}
    if isinstance(prof, AllZeroProfile):
        block.update(allZero=True, minDistance=None, bias=None, sparsityExponent=0.0,
                     notice="all-zero code: distance and bias are undefined")
    else:
        block.update(allZero=False, minDistance=prof.min_distance_fraction, bias=prof.bias,
                     sparsityExponent=round(prof.sparsity_exponent, 12))
    block["weightDistribution"] = list(weight_distribution(code))
    return block


def _orthogonality_row(name: str, code: LinearCode, vectors: np.ndarray) -> ReportRow:
    bad = int(np.count_nonzero(np.any((vectors @ code.generators.T) % code.q, axis=1))) \
        if code.dimension and len(vectors) else 0
    return ReportRow.compare(name, bad, 0, "==",
                             note=f"{len(vectors)} members; count not orthogonal to every generator")


# -- commands ------------------------------------------------------------------------------

def cmd_gen(args, doc: ReportDocument) -> str:
    field_ = FieldSpec(args.q)
    if args.n < 1 or not 1 <= args.dim <= args.n:
        raise UsageError(f"need 1 <= dim <= n, got dim={args.dim}, n={args.n}")
    doc.config.set(q=args.q, n=args.n, dim=args.dim, seed=args.seed, maxBias=args.max_bias,
                   retries=args.retries)
    rng = RandomSource(args.seed).generator
    best: Fraction | None = None
    for _ in range(max(args.retries, 1)):
        code = random_code(field_, args.n, args.dim, rng)
        if args.max_bias is None:
            break
        bias = profile(code).bias
        if best is None or bias < best:
            best = bias
        if bias <= args.max_bias:
            break
    else:
        raise BiasUnreachable(f"no code with bias <= {args.max_bias} in {args.retries} tries; "
                              f"best bias {best}", best)
    if code.size > PROFILE_PRINT_MAX:
        print(f"profile skipped: {code.size} codewords", file=sys.stderr)
        return code_to_json(code)
    try:
        block = _profile_block(code)
        print(f"q={block['q']} n={block['n']} |C|={block['size']} delta={block['minDistance']} "
              f"bias={block['bias']} t_hat={block['sparsityExponent']:.4f}", file=sys.stderr)
    except ScanTooLarge as exc:
        print(f"profile skipped: {exc}", file=sys.stderr)
    return code_to_json(code)


def cmd_inspect(args, doc: ReportDocument) -> None:
    code, src = _load(args)
    doc.config.set(code=src)
    with _row(doc, "profile"):
        doc.tables["profile"] = _profile_block(code)


def cmd_macwilliams(args, doc: ReportDocument) -> None:
    code, src = _load(args)
    kmax = code.n if args.kmax is None else args.kmax
    if not 0 <= kmax <= code.n:
        raise UsageError(f"kmax={kmax} outside [0, {code.n}]")
    doc.config.set(code=src, kmax=kmax)
    with _row(doc, "weightDistribution"):
        weights = weight_distribution(code)
    doc.tables["code"] = list(weights)
    dual = macwilliams_transform(weights, code.size, code.q, code.n)
    doc.tables["dual"] = list(dual)
    enumerated = []
    for k in range(kmax + 1):
        name = f"macwilliams[k={k}]"
        with _row(doc, name):
            count = len(dual_slice(code, k))
        enumerated.append(count)
        doc.rows.add(ReportRow.compare(name, dual[k], count, "==",
                                       note="transform vs brute-force enumeration"))
    doc.tables["enumerated"] = enumerated
    if not doc.rows.ok:
        bad = ", ".join(r.check for r in doc.rows.hard_failures)
        raise MacWilliamsViolation(f"transform disagrees with enumeration at {bad}")


def cmd_test(args, doc: ReportDocument) -> None:
    code, src = _load(args)
    params = _params(args)
    doc.config.set(code=src, seed=args.seed, trials=args.trials, params=_params_echo(params))
    k = _resolve_k(doc, args, params, code)
    rng = RandomSource(args.seed)
    if args.word:
        v = parse_word(code.field, code.n, args.word)
        doc.config.set(wordSource="given")
    else:
        errors = int(params.delta * code.n)
        v, _ = _random_word_at_distance(code, errors, rng.derive(0))
        doc.config.set(wordSource=f"random codeword + {errors} errors")
    doc.config.set(word=list(v.symbols))

    with _row(doc, f"tester.slice[k={k}]"):
        t = tester_new(code, k)
    doc.rows.add(_orthogonality_row(f"tester.completeness[k={k}]", code, t.slice.vectors))
    with _row(doc, f"prop7.rejection[k={k}]"):
        rej = rejection_probability_exact(code, k, v)
        kept = len(dual_slice(span_with(code, v), k))
    dist, _ = distance_to_code(code, v)
    doc.rows.add(ReportRow.compare(f"prop7.rejection[k={k}]", rej, 1 - Fraction(kept, len(t.slice)),
                                   "==", note="enumeration, cross-checked with MacWilliams"))
    doc.exact.update(rejection=rej, distance=dist, sliceSize=len(t.slice), keptSize=kept)

    est = rejection_probability_mc(code, k, v, args.trials, rng.derive(1))
    doc.add_mc("rejection", est)
    doc.rows.add(ReportRow.compare("tester.mc_within_3se", abs(est.estimate - rej),
                                   Fraction(3 * est.stderr), hard=False,
                                   note="|MC - exact| vs 3 standard errors"))
    if dist == 0:
        doc.rows.add(ReportRow.gated(f"tester.soundness[k={k}]", "v is a codeword", rej, 0, ">"))
    else:
        doc.rows.add(ReportRow.compare(f"tester.soundness[k={k}]", rej / dist, 0, ">", hard=False,
                                       note="Rej_k(v) / delta(v, C)"))
    if code.q ** code.n <= SOUNDNESS_SCAN_MAX:
        prof: SoundnessProfile = soundness_profile(code, k)
        if prof.empty_domain:
            doc.rows.add(ReportRow.gated(f"tester.soundness_min[k={k}]", "code is the full space"))
        else:
            doc.exact["soundnessMin"] = prof.min_ratio
            doc.rows.add(ReportRow.compare(f"tester.soundness_min[k={k}]", prof.min_ratio, 0, ">",
                                           hard=False,
                                           note=f"min over {prof.scanned} non-codewords; "
                                                f"witness {list(prof.witness.symbols)}"))
    else:
        doc.rows.add(ReportRow.gated(f"tester.soundness_min[k={k}]",
                                     f"q^n above {SOUNDNESS_SCAN_MAX}; exhaustive scan skipped"))
    run = tester_run(t, v, rng.derive(2))
    doc.rows.add(ReportRow.compare(f"tester.queries[k={k}]", run.queries, k, "==",
                                   note="coordinates read in one run"))


def _parse_errors(text: str, code: LinearCode) -> dict[int, int]:
    out: dict[int, int] = {}
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        try:
            pos, val = (int(x) for x in part.split(":"))
        except ValueError as exc:
            raise ParseError(f"cannot read error entry {part!r}; expected pos:value") from exc
        if not 0 <= pos < code.n or pos in out:
            raise ParseError(f"error position {pos} out of range or repeated")
        if val % code.q == 0:
            raise ParseError(f"error value at {pos} must be nonzero mod {code.q}")
        out[pos] = val % code.q
    return out


def cmd_correct(args, doc: ReportDocument) -> None:
    code, src = _load(args)
    params = _params(args)
    doc.config.set(code=src, seed=args.seed, trials=args.trials, params=_params_echo(params))
    k = _resolve_k(doc, args, params, code)
    rng = RandomSource(args.seed)
    if args.truth:
        truth = parse_word(code.field, code.n, args.truth)
        if truth not in code:
            raise UsageError("--truth is not a codeword")
    else:
        truth, _ = _random_word_at_distance(code, 0, rng.derive(0))
    if args.errors is not None:
        errs = _parse_errors(args.errors, code)
        v_arr = truth.as_array().copy()
        for pos, val in errs.items():
            v_arr[pos] = (v_arr[pos] + val) % code.q
        v = Word.from_array(code.field, v_arr)
    else:
        count = int(params.tau * code.n)
        pos = rng.derive(1).generator.choice(code.n, size=count, replace=False)
        vals = rng.derive(2).generator.integers(1, code.q, size=count)
        v_arr = truth.as_array().copy()
        v_arr[pos] = (v_arr[pos] + vals) % code.q
        v = Word.from_array(code.field, v_arr)
    err_pos = [int(j) for j in np.flatnonzero(v.as_array() != truth.as_array())]
    doc.config.set(truth=list(truth.symbols), word=list(v.symbols), errorPositions=err_pos)

    if args.index is not None and not 0 <= args.index < code.n:
        raise UsageError(f"index {args.index} out of range for length {code.n}")
    indices = [args.index] if args.index is not None else list(range(code.n))
    doc.config.set(indices=indices)
    inst = CorrectorInstance(code, k)
    errors: dict[str, Fraction] = {}
    for i in indices:
        with _row(doc, f"corrector.slice[i={i}]"):
            size = len(inst.slice_for(i))
        if size == 0:
            if args.index is not None:
                raise NoCorrectionVectors(f"no weight-{k} dual codeword is nonzero at index {i}")
            doc.rows.add(ReportRow.gated(f"corrector.error[i={i}]", "empty slice at this index"))
            continue
        errors[f"i={i}"] = correction_error_exact(inst, v, truth, i)
        doc.add_mc(f"error[i={i}]", correction_error_mc(inst, v, truth, i, args.trials,
                                                          rng.derive(100 + i)))
        oracle = QueryCountingOracle(v)
        corrector_run(inst, oracle, i, rng.derive(10_000 + i))
        doc.rows.add(ReportRow.compare(f"corrector.queries[i={i}]", oracle.queries, k - 1, "=="))
        doc.rows.add(ReportRow.compare(f"corrector.reads_own_index[i={i}]",
                                       oracle.reads.count(i), 0, "=="))
        doc.rows.extend(lemma14_bound_check(inst, k, v, truth, i))
        for j in (err_pos or [(i + 1) % code.n]):
            if j != i and code.n > 1:
                doc.rows.extend(lemma13_report(inst, k, i, j))
    doc.exact["error"] = errors


def _pairs(n: int, rng: RandomSource, limit: int = 10) -> list[tuple[int, int]]:
    all_pairs = list(itertools.combinations(range(n), 2))
    if len(all_pairs) <= limit:
        return all_pairs
    pick = rng.generator.choice(len(all_pairs), size=limit, replace=False)
    return [all_pairs[p] for p in sorted(pick)]


def cmd_verify(args, doc: ReportDocument) -> None:
    code, src = _load(args, required=False)
    params = _params(args)
    if code is not None:
        q, n = code.q, code.n
        if (args.q not in (None, q)) or (args.n not in (None, n)):
            raise UsageError("--q/--n disagree with the code file")
    else:
        if args.q is None or args.n is None:
            raise UsageError("verify needs a code or both --q and --n")
        q, n = FieldSpec(args.q).q, args.n
        if n < 1:
            raise UsageError("n must be positive")
    kmax = min(n, 4) if args.kmax is None else args.kmax
    if not 0 <= kmax <= n:
        raise UsageError(f"kmax={kmax} outside [0, {n}]")
    doc.config.set(code=src, q=q, n=n, kmax=kmax, seed=args.seed, words=args.words,
                   params=_params_echo(params))

    doc.rows.extend(verify_krawtchouk_properties(q, n, kmax))
    if code is None:
        return
    rng = RandomSource(args.seed)

    with _row(doc, "weightDistribution"):
        weights = weight_distribution(code)
    dual = macwilliams_transform(weights, code.size, q, n)
    doc.tables.update(code=list(weights), dual=list(dual))
    for k in range(1, kmax + 1):
        name = f"slice.orthogonal[k={k}]"
        with _row(doc, name):
            sl = dual_slice(code, k)
        doc.rows.add(_orthogonality_row(name, code, sl.vectors))
        doc.rows.add(ReportRow.compare(f"macwilliams[k={k}]", dual[k], len(sl), "==",
                                       note="transform vs enumeration"))

    doc.rows.extend(verify_prop4(code, params))
    threshold = (params.t + params.c + 1) / params.gamma
    for k in range(1, kmax + 1):
        if k >= threshold:
            doc.rows.extend(claim5_sum(weights, k, params, q, n))
        else:
            doc.rows.add(ReportRow.gated(f"claim5[k={k}]", f"k below (t+c+1)/gamma = {threshold}"))
        doc.rows.extend(lemma6_report(code, k))
        doc.rows.extend(lemma8_check(k, params.tau, q, n))
        if k >= 2:
            doc.rows.extend(lemma9_sum_check(code, k, params))

    if code.size < q ** n:
        errors = max(1, int(params.delta * n))
        for w in range(args.words):
            v, _ = _random_word_at_distance(code, errors, rng.derive(w))
            if v in code:
                continue
            for k in range(1, kmax + 1):
                with _row(doc, f"lemma10[k={k}]"):
                    doc.rows.extend(replace(r, check=f"{r.check}@word{w}")
                                    for r in lemma10_check(code, v, k))
    else:
        doc.rows.add(ReportRow.gated("lemma10", "code is the full space"))

    for k in range(1, kmax + 1):
        for i in range(n):
            with _row(doc, f"prop11[k={k},i={i}]"):
                doc.rows.extend(prop11_check(code, k, i))
    pairs = _pairs(n, rng.derive(1_000))
    for k in range(2, kmax + 1):
        inst = CorrectorInstance(code, k)
        for i, j in pairs:
            with _row(doc, f"prop12[k={k},i={i},j={j}]"):
                doc.rows.extend(prop12_check(code, k, i, j))
                if len(inst.slice_for(i)):
                    doc.rows.extend(lemma13_report(inst, k, i, j))


COMMANDS = {"gen": cmd_gen, "inspect": cmd_inspect, "macwilliams": cmd_macwilliams,
            "test": cmd_test, "correct": cmd_correct, "verify": cmd_verify}


def _emit(args, text: str) -> None:
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> tuple[int, ReportDocument | None]:
    """Parse ``argv``, execute, write output; return the exit code and the document."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), None

    doc = ReportDocument(args.command, ExperimentConfig(args.command))
    if not args.no_timestamp:
        doc.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    code = EXIT_OK
    try:
        result = COMMANDS[args.command](args, doc)
        if args.command == "gen":
            _emit(args, result)
            return EXIT_OK, None
        code = EXIT_OK if doc.ok else EXIT_FAIL
    except ScanTooLarge as exc:
        doc.error, code = f"ScanTooLarge: {exc}", EXIT_GUARD
    except (MacWilliamsViolation, BiasUnreachable) as exc:
        doc.error, code = f"{type(exc).__name__}: {exc}", EXIT_FAIL
    except (SparseCodeError, ValueError, KeyError, IndexError) as exc:
        doc.error, code = f"{type(exc).__name__}: {exc}", EXIT_USAGE
    if doc.error:
        print(f"sparsecode {args.command}: {doc.error}", file=sys.stderr)
        if args.command == "gen":
            return code, None
    for w in doc.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(args, doc.to_json() if args.format == "json" else report_to_csv(doc.rows))
    return code, doc


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
