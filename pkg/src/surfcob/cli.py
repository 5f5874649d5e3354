"""Command-line front end.

One subcommand per task, one JSON document on standard output per run, logs
on standard error.  Exit 0 for a completed run (the verdict may still be
"no"), exit 2 for malformed input or failed schema validation, exit 3 for an
internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from importlib import resources

import jsonschema

from . import decide as _decide
from .diagrams import (
    Infeasible,
    diagram_from_json_dict,
    diagram_to_json_dict,
    normalize,
    oracle_assign,
)
from .errors import InputError, InternalLogicError
from .homology import class_of_cycle, homology_of_complex
from .jsonio import (
    complex_from_json,
    normalize_result_to_json_dict,
    query_from_json,
    verdict_to_json_dict,
)
from .sampling import random_diagram

log = logging.getLogger("surfcob")

_KINDS = ("query", "diagram", "complex", "reference")
_SCHEMA_CACHE: dict = {}


def _schema(kind: str) -> dict:
    if kind not in _SCHEMA_CACHE:
        text = (
            resources.files(__package__) / "schemas" / f"{kind}.schema.json"
        ).read_text(encoding="utf-8")
        _SCHEMA_CACHE[kind] = json.loads(text)
    return _SCHEMA_CACHE[kind]


def _load(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _validate_document(data, label: str) -> str:
    """Schema-validate one loaded document; returns its kind."""
    if not isinstance(data, dict):
        raise InputError(f"{label}: top level must be a JSON object")
    version = data.get("schema_version")
    if version != "1":
        raise InputError(
            f"{label}: unsupported schema_version {version!r}",
            path="schema_version",
        )
    kind = data.get("kind")
    if kind not in _KINDS:
        raise InputError(
            f"{label}: 'kind' must be one of {', '.join(_KINDS)}", path="kind"
        )
    validator = jsonschema.Draft202012Validator(_schema(kind))
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(x) for x in err.absolute_path)
        raise InputError(f"{label}: {err.message}", path=where)
    return kind


def _require_kind(data, label: str, expected: str) -> None:
    kind = _validate_document(data, label)
    if kind != expected:
        raise InputError(
            f"{label}: expected a {expected} document, got {kind}", path="kind"
        )


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _dispatch_query(parsed: dict):
    question = parsed["question"]
    x = parsed["x"]
    if question == "cobordant":
        return _decide.decide_cobordant(x, parsed["a"], parsed["b"])
    if question == "cobordant_rel_boundary":
        return _decide.decide_cobordant_rel_boundary(x, parsed["a"], parsed["b"])
    if question == "extends":
        return _decide.decide_extends_cobordism(
            x, parsed["a"], parsed["b"], parsed["z"]
        )
    if question == "oriented_cobordant":
        return _decide.decide_oriented_cobordant(x, parsed["a"], parsed["b"])
    if question == "oriented_extends":
        return _decide.decide_oriented_extends(
            x, parsed["a"], parsed["b"], parsed["z"]
        )
    if question == "spanning_extends":
        return _decide.decide_spanning_extends(
            x, parsed["s"], parsed["sz_euler"], parsed["zclass"]
        )
    if question == "almost_extendable":
        return _decide.decide_almost_extendable(
            x,
            parsed["a"],
            parsed["b"],
            parsed["zclass"],
            parsed["e_a"],
            parsed["e_b"],
        )
    if question == "concordant":
        return _decide.decide_concordant(
            x, parsed["a"], parsed["b"], parsed.get("z")
        )
    raise InternalLogicError(f"unhandled question {question!r}")


def _cmd_decide(args) -> int:
    data = _load(args.file)
    _require_kind(data, args.file, "query")
    parsed = query_from_json(data)
    log.info("deciding %s on %s", parsed["question"], args.file)
    verdict = _dispatch_query(parsed)
    _emit(verdict_to_json_dict(verdict, include_trace=args.trace))
    return 0


def _cmd_homology(args) -> int:
    data = _load(args.file)
    _require_kind(data, args.file, "complex")
    complex_, degree, cycle = complex_from_json(data)
    group = homology_of_complex(complex_, degree)
    out: dict = {
        "free_rank": group.free_rank,
        "invariant_factors": list(group.invariant_factors),
    }
    if cycle is not None:
        out["class"] = list(class_of_cycle(complex_, cycle, degree).coords)
    _emit(out)
    return 0


def _cmd_diagram_normalize(args) -> int:
    data = _load(args.file)
    _require_kind(data, args.file, "diagram")
    d = diagram_from_json_dict(data["diagram"], path="diagram")
    result = normalize(d)
    if isinstance(result, Infeasible):
        _emit(
            {"feasible": False, "reason": result.reason, "detail": result.detail}
        )
        return 0
    out = {"feasible": True}
    out.update(normalize_result_to_json_dict(result, include_trace=args.trace))
    _emit(out)
    return 0


def _cmd_diagram_oracle(args) -> int:
    data = _load(args.file)
    _require_kind(data, args.file, "diagram")
    d = diagram_from_json_dict(data["diagram"], path="diagram")
    vec = oracle_assign(d)
    _emit({"assignment": None if vec is None else list(vec)})
    return 0


def _cmd_validate(args) -> int:
    checked = []
    for path in args.files:
        data = _load(path)
        kind = _validate_document(data, path)
        checked.append({"file": path, "kind": kind})
        log.info("validated %s as %s", path, kind)
    _emit({"valid": True, "files": checked})
    return 0


def _fixture_dir():
    return resources.files(__package__) / "fixtures"


def fixture_path(name: str) -> str:
    """Filesystem path of a bundled fixture, for tests and scripting."""
    fname = name if name.endswith(".json") else f"{name}.json"
    return str(_fixture_dir() / fname)


def _cmd_fixtures(args) -> int:
    if args.sample_diagram:
        rng = random.Random(args.seed)
        d = random_diagram(rng, mode=args.mode)
        _emit(
            {
                "schema_version": "1",
                "kind": "diagram",
                "comment": f"sampled with seed {args.seed}",
                "diagram": diagram_to_json_dict(d),
            }
        )
        return 0
    names = sorted(
        p.name for p in _fixture_dir().iterdir() if p.name.endswith(".json")
    )
    if args.name is None:
        _emit({"fixtures": names})
        return 0
    fname = args.name if args.name.endswith(".json") else f"{args.name}.json"
    if fname not in names:
        raise InputError(f"no bundled fixture named {args.name!r}")
    data = json.loads((_fixture_dir() / fname).read_text(encoding="utf-8"))
    _emit(data)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surfcob",
        description=(
            "Decision procedures for surface cobordism and concordance, "
            "with a double-point diagram calculus"
        ),
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="log progress to standard error",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="answer a classification query")
    p.add_argument("file", help="query JSON file")
    p.add_argument(
        "--trace",
        action="store_true",
        help="include the verifiable move trace in any certificate",
    )
    p.set_defaults(fn=_cmd_decide)

    p = sub.add_parser("homology", help="homology of a presented chain complex")
    p.add_argument("file", help="complex JSON file")
    p.set_defaults(fn=_cmd_homology)

    p = sub.add_parser(
        "diagram-normalize",
        help="normalize a double-point diagram or name the obstruction",
    )
    p.add_argument("file", help="diagram JSON file")
    p.add_argument(
        "--trace", action="store_true", help="include the move trace"
    )
    p.set_defaults(fn=_cmd_diagram_normalize)

    p = sub.add_parser(
        "diagram-oracle",
        help="exhaustive search for a uniform satisfying assignment",
    )
    p.add_argument("file", help="diagram JSON file")
    p.set_defaults(fn=_cmd_diagram_oracle)

    p = sub.add_parser("validate", help="schema-validate JSON documents")
    p.add_argument("files", nargs="+", help="JSON files to check")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser(
        "fixtures", help="list or emit bundled examples, or sample a diagram"
    )
    p.add_argument("name", nargs="?", help="fixture to emit")
    p.add_argument(
        "--sample-diagram",
        action="store_true",
        help="emit a random valid diagram instead",
    )
    p.add_argument(
        "--seed", type=int, default=0, help="seed for --sample-diagram"
    )
    p.add_argument(
        "--mode",
        choices=("two_column", "three_column"),
        default=None,
        help="fix the sampled diagram's mode",
    )
    p.set_defaults(fn=_cmd_fixtures)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    try:
        return args.fn(args)
    except InputError as exc:
        _emit(
            {
                "error": {
                    "type": type(exc).__name__,
                    "message": exc.message,
                    "path": exc.path,
                }
            }
        )
        return 2
    except InternalLogicError as exc:
        _emit({"error": {"type": "InternalLogicError", "message": str(exc)}})
        return 3
    except Exception as exc:  # noqa: BLE001 - the contract is JSON out, always
        log.exception("unexpected failure")
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 3


if __name__ == "__main__":
    sys.exit(main())
