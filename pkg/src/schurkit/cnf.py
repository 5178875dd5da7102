"""CNF generation and model decoding for external SAT solvers.

Variable numbering is var(i,c) = (i-1)*n + c, 1-based, echoed in the
DIMACS comments.  Clauses: at-least-one-color per integer, pairwise
at-most-one (on by default), the kind's forbidden monochromatic tuples
from search.ground_clauses, mirror-equality clauses when the spec is
symmetric, and unit clauses banning colors below their minimum start.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import Coloring, Violation
from .search import SearchSpec, ground_clauses
from .templates import verify_s_template, verify_ws_template
from .coloring import verify_sum_free, verify_weakly_sum_free


class ModelViolation(ValueError):
    """The model parsed fine but does not satisfy what it claims to."""


@dataclass(frozen=True)
class CnfInstance:
    spec: SearchSpec
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def var(self, i: int, c: int) -> int:
        n = self.spec.num_colors
        if not (1 <= i <= self.spec.domain_length and 1 <= c <= n):
            raise ValueError(f"no variable for integer {i} color {c}")
        return (i - 1) * n + c

    def int_color(self, v: int) -> tuple[int, int]:
        """Inverse of var: (integer, color) for a DIMACS variable."""
        n = self.spec.num_colors
        if not (1 <= v <= self.num_vars):
            raise ValueError(f"variable {v} out of range 1..{self.num_vars}")
        return (v - 1) // n + 1, (v - 1) % n + 1


def encode_cnf(spec: SearchSpec, at_most_one: bool = True) -> CnfInstance:
    size = spec.domain_length
    n = spec.num_colors
    var = lambda i, c: (i - 1) * n + c
    clauses: list[tuple[int, ...]] = []
    for i in range(1, size + 1):
        clauses.append(tuple(var(i, c) for c in range(1, n + 1)))
    if at_most_one:
        for i in range(1, size + 1):
            for c in range(1, n + 1):
                for d in range(c + 1, n + 1):
                    clauses.append((-var(i, c), -var(i, d)))
    for cl in ground_clauses(spec):
        clauses.append(tuple(-var(i, c) for i, c in cl))
    if spec.symmetric:
        for i in range(1, size // 2 + 1):
            j = size + 1 - i
            for c in range(1, n + 1):
                clauses.append((-var(i, c), var(j, c)))
                clauses.append((var(i, c), -var(j, c)))
    for c, start in spec.min_starts:
        for i in range(1, min(start, size + 1)):
            clauses.append((-var(i, c),))
    return CnfInstance(spec, size * n, tuple(clauses))


def _spec_echo(spec: SearchSpec) -> str:
    parts = [f"kind={spec.kind}", f"colors={spec.num_colors}"]
    if spec.length is not None:
        parts.append(f"length={spec.length}")
    if spec.width is not None:
        parts.append(f"width={spec.width}")
    if spec.tail is not None:
        parts.append(f"tail={spec.tail}")
    if spec.special is not None:
        parts.append(f"special={spec.special}")
    if spec.symmetric:
        parts.append("symmetric=1")
    for c, start in spec.min_starts:
        parts.append(f"minstart={c}:{start}")
    return " ".join(parts)


def to_dimacs(inst: CnfInstance) -> str:
    lines = [
        f"c spec {_spec_echo(inst.spec)}",
        f"c var(i,c) = (i-1)*{inst.spec.num_colors} + c for integer i, color c",
        f"p cnf {inst.num_vars} {len(inst.clauses)}",
    ]
    for cl in inst.clauses:
        lines.append(" ".join(str(lit) for lit in cl) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfInstance:
    """Read back a file produced by to_dimacs (the spec echo is required)."""
    spec_fields: dict[str, object] = {}
    min_starts: list[tuple[int, int]] = []
    num_vars = num_clauses = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("c"):
            body = line[1:].strip()
            if body.startswith("spec "):
                for token in body[5:].split():
                    key, _, val = token.partition("=")
                    if key == "kind":
                        spec_fields["kind"] = val
                    elif key == "colors":
                        spec_fields["num_colors"] = int(val)
                    elif key in ("length", "width", "tail", "special"):
                        spec_fields[key] = int(val)
                    elif key == "symmetric":
                        spec_fields["symmetric"] = bool(int(val))
                    elif key == "minstart":
                        c, _, start = val.partition(":")
                        min_starts.append((int(c), int(start)))
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            continue
        for token in line.split():
            lit = int(token)
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if pending:
        raise ValueError("last clause is not 0-terminated")
    if "kind" not in spec_fields:
        raise ValueError("no spec echo comment; cannot recover the search spec")
    if num_vars is None:
        raise ValueError("missing p cnf line")
    if num_clauses != len(clauses):
        raise ValueError(
            f"problem line promises {num_clauses} clauses, file has {len(clauses)}"
        )
    spec = SearchSpec(min_starts=tuple(min_starts), **spec_fields)
    inst = CnfInstance(spec, num_vars, tuple(clauses))
    if num_vars != spec.domain_length * spec.num_colors:
        raise ValueError("variable count does not match the spec echo")
    return inst


def parse_model_file(text: str) -> list[int]:
    """Literals from solver output: v-lines, or bare lines of literals.

    Accepts minisat style (SAT / UNSAT first line) and DIMACS output
    style (s SATISFIABLE / v lines).  Raises on an unsatisfiable claim.
    """
    lits: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("s ") or line in ("SAT", "UNSAT", "UNSATISFIABLE"):
            word = line.split(maxsplit=1)[-1].upper()
            if "UNSAT" in word:
                raise ValueError("model file reports unsatisfiable")
            continue
        if line.startswith("v"):
            line = line[1:]
        for token in line.split():
            lit = int(token)
            if lit != 0:
                lits.append(lit)
    if not lits:
        raise ValueError("no literals found in model file")
    return lits


def verify_decoded(spec: SearchSpec, coloring: Coloring) -> Violation | None:
    """Run the verifier matching the spec's kind."""
    if spec.kind == "sumfree-partition":
        return verify_sum_free(coloring)
    if spec.kind == "weak-partition":
        return verify_weakly_sum_free(coloring)
    if spec.kind == "s-template":
        got = verify_s_template(coloring, spec.special)
        return got if isinstance(got, Violation) else None
    got = verify_ws_template(coloring, spec.width, spec.tail, spec.special)
    return got if isinstance(got, Violation) else None


def decode_model(inst: CnfInstance, literals) -> Coloring:
    """Coloring from a satisfying assignment; checks and re-verifies.

    Unlisted variables count as false.  With at-most-one off a cell can
    have several true colors; the lowest one wins and the re-verification
    decides whether that is acceptable.
    """
    true_vars = set()
    for lit in literals:
        v = abs(lit)
        if not (1 <= v <= inst.num_vars):
            raise ValueError(f"literal {lit} outside 1..{inst.num_vars}")
        if lit > 0:
            true_vars.add(v)
    for idx, cl in enumerate(inst.clauses):
        if not any(
            (lit > 0 and lit in true_vars) or (lit < 0 and -lit not in true_vars)
            for lit in cl
        ):
            raise ModelViolation(f"assignment falsifies clause {idx + 1}: {cl}")
    n = inst.spec.num_colors
    colors = []
    for i in range(1, inst.spec.domain_length + 1):
        mine = [c for c in range(1, n + 1) if inst.var(i, c) in true_vars]
        if not mine:
            raise ModelViolation(f"integer {i} has no true color variable")
        colors.append(mine[0])
    coloring = Coloring(tuple(colors), n, allow_empty=True)
    bad = verify_decoded(inst.spec, coloring)
    if bad is not None:
        raise ModelViolation(f"decoded coloring fails its verifier ({bad})")
    return coloring


def assignment_from_coloring(inst: CnfInstance, coloring: Coloring) -> list[int]:
    """The one-hot literal list a solver would print for this coloring."""
    if coloring.length != inst.spec.domain_length:
        raise ValueError("coloring length does not match the instance")
    out = []
    for i in range(1, coloring.length + 1):
        for c in range(1, inst.spec.num_colors + 1):
            v = inst.var(i, c)
            out.append(v if coloring.color_of(i) == c else -v)
    return out
