"""Synthetic corpus generation, mutation, and benchmark harness.

generate_program() emits seeded, parseable MiniProc with enough shape
variety that unrelated programs land far apart after normalization.
mutate() derives labeled clones: type1 touches only comments and
whitespace, type2 renames identifiers consistently and swaps literal
values, type3 additionally inserts, deletes, or reorders whole
statements. evaluate() runs the full index+query loop over a corpus
with a ground-truth manifest and reports precision per alpha;
scaling_run() times queries against growing indexes.
"""

from __future__ import annotations

import csv
import json
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .config import ConfigStamp, RunConfig
from .frontend import PLAIN_KINDS, Statement, Token, parse, tokenize
from .index_store import FingerprintIndex, record_from_program
from .pipeline import run_pipeline


@dataclass(frozen=True)
class SizeSpec:
    """Rough plain-statement budget and construct nesting bound."""

    statements: int = 24
    max_depth: int = 2


@dataclass(frozen=True)
class EditOps:
    insert: int = 1
    delete: int = 0
    reorder: int = 0

    @property
    def total(self) -> int:
        return self.insert + self.delete + self.reorder


@dataclass(frozen=True)
class MutationSpec:
    kind: str  # type1 | type2 | type3
    seed: int = 0
    edit_ops: EditOps = EditOps()


@dataclass
class EvalResult:
    alpha: int
    candidates: int
    tp: int
    fp: int
    precision: float | None
    by_blocks: dict[str, dict[str, int]] = field(default_factory=dict)
    by_lines: dict[str, dict[str, int]] = field(default_factory=dict)
    wall_time_s: float = 0.0

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "candidates": self.candidates,
            "tp": self.tp,
            "fp": self.fp,
            "precision": self.precision,
            "by_blocks": self.by_blocks,
            "by_lines": self.by_lines,
            "wall_time_s": self.wall_time_s,
        }


# -- program generation ----------------------------------------------------


_ARITH_OPS = ("+", "-", "*", "/", "%")
_CMP_OPS = ("<", ">", "<=", ">=", "==", "!=")


class _Generator:
    def __init__(self, rng: random.Random, spec: SizeSpec):
        self.rng = rng
        self.spec = spec
        n_locals = rng.randint(1, 4)
        self.locals = [f"v{i}" for i in range(n_locals)]
        self.globals = [f"g{i}" for i in range(rng.randint(2, 5))]
        self.funcs = [f"f{i}" for i in range(rng.randint(1, 3))]
        self.lines: list[str] = []
        self.constructs_emitted = 0
        # Per-program style: operator mix, expression length, operand mix,
        # call arity, and paren habits are all drawn once per program.
        # Statement shape is what survives normalization, so without this
        # every program samples the same narrow shape distribution and
        # unrelated long paths end up sharing most of their statement
        # multiset, which reads as a clone.
        self.op_weights = [rng.uniform(0.15, 1.0) for _ in _ARITH_OPS]
        self.cmp_weights = [rng.uniform(0.15, 1.0) for _ in _CMP_OPS]
        self.term_weights = [
            rng.uniform(0.05, 0.35),
            rng.uniform(0.4, 1.0),
            rng.uniform(0.4, 1.0),
            rng.uniform(0.15, 0.9),
        ]
        self.operand_weights = [rng.uniform(0.25, 1.0) for _ in range(4)]
        self.arity_weights = [rng.uniform(0.1, 1.0) for _ in range(5)]
        self.role_weights = [
            rng.uniform(0.45, 0.8),
            rng.uniform(0.1, 0.35),
            rng.uniform(0.1, 0.35),
        ]
        self.paren_p = rng.uniform(0.08, 0.4)

    def _operand(self) -> str:
        pick = self.rng.choices(range(4), weights=self.operand_weights)[0]
        if pick == 0:
            return self.rng.choice(self.locals)
        if pick == 1:
            return self.rng.choice(self.globals)
        if pick == 2:
            return str(self.rng.randint(0, 99))
        return f'"s{self.rng.randint(0, 99)}"'

    def _expr(self, depth: int = 0) -> str:
        n_terms = self.rng.choices([1, 2, 3, 4], weights=self.term_weights)[0]
        parts = []
        for i in range(n_terms):
            if i:
                parts.append(self.rng.choices(_ARITH_OPS, weights=self.op_weights)[0])
            if depth == 0 and self.rng.random() < self.paren_p:
                parts.append(f"( {self._expr(depth + 1)} )")
            else:
                parts.append(self._operand())
        return " ".join(parts)

    def _cmp_side(self) -> str:
        if self.rng.random() < 0.3:
            op = self.rng.choices(_ARITH_OPS, weights=self.op_weights)[0]
            return f"{self._operand()} {op} {self._operand()}"
        return self._operand()

    def _comparison(self) -> str:
        op = self.rng.choices(_CMP_OPS, weights=self.cmp_weights)[0]
        return f"{self._cmp_side()} {op} {self._cmp_side()}"

    def _guard(self) -> str:
        # case discriminants and when labels; varied on purpose, since a
        # path crosses several of these and identical guard shapes would
        # stack up and drown out the rest of the path in the fingerprint
        if self.rng.random() < 0.45:
            return self._operand()
        op = self.rng.choices(_ARITH_OPS, weights=self.op_weights)[0]
        return f"{self._operand()} {op} {self._operand()}"

    def _condition(self) -> str:
        cond = self._comparison()
        if self.rng.random() < 0.2:
            cond = f"{cond} {self.rng.choice(['&&', '||'])} {self._comparison()}"
        return cond

    def _plain(self) -> str:
        role = self.rng.choices(("assign", "output", "call"), weights=self.role_weights)[0]
        if role == "assign":
            target = self.rng.choice(self.locals + self.globals)
            return f"{target} = {self._expr()};"
        if role == "output":
            return f"output {self._expr()};"
        func = self.rng.choice(self.funcs)
        n_args = self.rng.choices(range(5), weights=self.arity_weights)[0]
        args = ", ".join(self._operand() for _ in range(n_args))
        return f"call {func}({args});"

    def _body(self, budget: int, depth: int, pad: str) -> int:
        """Emit approximately `budget` statements at this depth;
        returns how many were actually spent."""
        spent = 0
        while spent < budget:
            remaining = budget - spent
            construct_p = 0.30 if depth < self.spec.max_depth and remaining >= 3 else 0.0
            if self.rng.random() < construct_p:
                spent += self._construct(remaining, depth, pad)
            else:
                self.lines.append(pad + self._plain())
                spent += 1
        return spent

    def _construct(self, budget: int, depth: int, pad: str) -> int:
        kind = self.rng.choices(
            ["if", "while", "for", "case"], weights=[45, 22, 18, 15]
        )[0]
        self.constructs_emitted += 1
        inner = pad + "  "
        if kind == "if":
            self.lines.append(pad + f"if ({self._condition()})")
            spent = 1 + self._body(self.rng.randint(1, min(3, budget)), depth + 1, inner)
            if self.rng.random() < 0.25 and spent + 2 <= budget:
                self.lines.append(pad + f"elseif ({self._condition()})")
                spent += 1 + self._body(self.rng.randint(1, 2), depth + 1, inner)
            if self.rng.random() < 0.35 and spent + 2 <= budget:
                self.lines.append(pad + "else")
                spent += 1 + self._body(self.rng.randint(1, 2), depth + 1, inner)
            self.lines.append(pad + "endif")
            return spent
        if kind == "while":
            self.lines.append(pad + f"while ({self._condition()})")
            spent = 1 + self._body(self.rng.randint(1, min(3, budget)), depth + 1, inner)
            self.lines.append(pad + "endwhile")
            return spent
        if kind == "for":
            var = self.rng.choice(self.locals + self.globals)
            self.lines.append(pad + f"for {var} = {self._expr()} to {self._expr()}")
            spent = 1 + self._body(self.rng.randint(1, min(3, budget)), depth + 1, inner)
            self.lines.append(pad + "endfor")
            return spent
        self.lines.append(pad + f"case ({self._guard()})")
        spent = 1
        for _ in range(self.rng.randint(2, 3)):
            self.lines.append(pad + f"when ({self._guard()})")
            spent += 1 + self._body(self.rng.randint(1, 2), depth + 1, inner)
        self.lines.append(pad + "endcase")
        return spent

    def generate(self) -> str:
        groups: list[list[str]] = []
        pool = list(self.locals)
        while pool:
            take = min(len(pool), self.rng.randint(1, 2))
            groups.append(pool[:take])
            pool = pool[take:]
        for group in groups:
            self.lines.append(f"declare {', '.join(group)};")
        for _ in range(self.rng.randint(1, 2)):
            self.lines.append(self._plain())
        self._body(max(4, self.spec.statements - len(self.lines) - 1), 0, "")
        if self.constructs_emitted == 0:
            # every program carries control flow so at least one path
            # spans three or more real blocks
            self._construct(3, 0, "")
        self.lines.append(f"output {self._expr()};")
        return "\n".join(self.lines) + "\n"


def generate_program(seed: int, size_spec: SizeSpec = SizeSpec()) -> str:
    """Deterministic random program for the given seed."""
    return _Generator(random.Random(seed), size_spec).generate()


# -- mutation ----------------------------------------------------------------


def _mutate_type1(source: str, rng: random.Random) -> str:
    out: list[str] = []
    for line in source.splitlines():
        if rng.random() < 0.20:
            line = "  " + line
        if line.strip() and rng.random() < 0.30:
            line = line + f"  # note {rng.randint(0, 999)}"
        out.append(line)
        if rng.random() < 0.15:
            out.append("")
    if rng.random() < 0.5:
        out.insert(0, f"# header {rng.randint(0, 999)}")
    return "\n".join(out) + "\n"


def _fresh_literal(lexeme: str, rng: random.Random) -> str:
    if lexeme.startswith('"'):
        candidate = f'"t{rng.randint(0, 999)}"'
        while candidate == lexeme:
            candidate = f'"t{rng.randint(0, 999)}"'
        return candidate
    if "." in lexeme:
        candidate = f"{rng.randint(0, 99)}.{rng.randint(1, 9)}"
        while candidate == lexeme:
            candidate = f"{rng.randint(0, 99)}.{rng.randint(1, 9)}"
        return candidate
    candidate = str(rng.randint(0, 999))
    while candidate == lexeme:
        candidate = str(rng.randint(0, 999))
    return candidate


def _render_tokens(tokens: Sequence[Token]) -> str:
    lines: list[str] = []
    current: list[str] = []
    for tok in tokens:
        current.append(tok.lexeme)
        if (tok.kind == "punctuation" and tok.lexeme == ";") or (
            tok.kind == "keyword" and tok.lexeme.startswith("end")
        ):
            lines.append(" ".join(current))
            current = []
    if current:
        lines.append(" ".join(current))
    return "\n".join(lines) + "\n"


def _mutate_type2(source: str, rng: random.Random) -> str:
    tokens = tokenize(source)
    rename: dict[str, str] = {}
    counter = 0
    out: list[Token] = []
    for tok in tokens:
        if tok.kind == "identifier":
            if tok.lexeme not in rename:
                rename[tok.lexeme] = f"m{counter}"
                counter += 1
            out.append(Token("identifier", rename[tok.lexeme], tok.line))
        elif tok.kind == "literal":
            out.append(Token("literal", _fresh_literal(tok.lexeme, rng), tok.line))
        else:
            out.append(tok)
    return _render_tokens(out)


@dataclass
class _MutNode:
    kind: str
    tokens: tuple[Token, ...]
    children: list["_MutNode"]


def _to_mut(node: Statement) -> _MutNode:
    return _MutNode(node.kind, node.tokens, [_to_mut(c) for c in node.children])


def _render_node(node: _MutNode, depth: int, lines: list[str]) -> None:
    pad = "  " * depth
    join = " ".join(t.lexeme for t in node.tokens)
    if node.kind in PLAIN_KINDS:
        lines.append(pad + join + ";")
        return
    if node.kind in ("if", "while", "case"):
        lines.append(pad + node.kind + " " + join)
    elif node.kind == "for":
        lines.append(pad + "for " + join)
    else:
        raise ValueError(f"cannot render node kind {node.kind!r}")
    for child in node.children:
        if child.kind in ("elseif", "when"):
            lines.append(pad + child.kind + " " + " ".join(t.lexeme for t in child.tokens))
            for grand in child.children:
                _render_node(grand, depth + 1, lines)
        elif child.kind == "else":
            lines.append(pad + "else")
            for grand in child.children:
                _render_node(grand, depth + 1, lines)
        elif child.kind == "end-marker":
            lines.append(pad + child.tokens[0].lexeme)
        else:
            _render_node(child, depth + 1, lines)


def _render_tree(root: _MutNode) -> str:
    lines: list[str] = []
    for child in root.children:
        _render_node(child, 0, lines)
    return "\n".join(lines) + "\n"


def _body_slots(root: _MutNode) -> list[tuple[_MutNode, int]]:
    """(container, insert position) pairs where a plain statement can
    legally go. Construct children lists keep alternatives and the end
    marker at the tail, so inserts stop at the first such node."""
    slots: list[tuple[_MutNode, int]] = []

    def walk(node: _MutNode, is_body: bool) -> None:
        if is_body:
            limit = len(node.children)
            for i, child in enumerate(node.children):
                if child.kind in ("elseif", "else", "when", "end-marker"):
                    limit = i
                    break
            for i in range(limit + 1):
                slots.append((node, i))
        for child in node.children:
            if child.kind in ("if", "while", "for"):
                walk(child, True)
            elif child.kind == "case":
                walk(child, False)
            elif child.kind in ("elseif", "else", "when"):
                walk(child, True)

    walk(root, True)
    return slots


def _plain_positions(root: _MutNode) -> list[tuple[_MutNode, int]]:
    positions: list[tuple[_MutNode, int]] = []

    def walk(node: _MutNode) -> None:
        for i, child in enumerate(node.children):
            if child.kind in PLAIN_KINDS:
                positions.append((node, i))
            else:
                walk(child)

    walk(root)
    return positions


def _random_plain_statement(rng: random.Random) -> _MutNode:
    gen = _Generator(rng, SizeSpec())
    text = gen._plain()
    program = parse(tokenize(text))
    return _to_mut(program.children[0])


def _mutate_type3(source: str, rng: random.Random, ops: EditOps) -> str:
    if ops.total < 1:
        raise ValueError("type3 mutation needs at least one edit op")
    renamed = _mutate_type2(source, rng)
    root = _to_mut(parse(tokenize(renamed)))

    for _ in range(ops.insert):
        container, pos = rng.choice(_body_slots(root))
        container.children.insert(pos, _random_plain_statement(rng))
    for _ in range(ops.delete):
        positions = _plain_positions(root)
        if not positions:
            raise ValueError("no deletable statement left")
        if len(root.children) == 1 and positions == [(root, 0)]:
            raise ValueError("type3 edits would empty the program")
        container, pos = rng.choice(positions)
        del container.children[pos]
        if not root.children:
            raise ValueError("type3 edits would empty the program")
    for _ in range(ops.reorder):
        positions = _plain_positions(root)
        adjacent = [
            (container, i)
            for container, i in positions
            if i + 1 < len(container.children)
            and container.children[i + 1].kind in PLAIN_KINDS
        ]
        if not adjacent:
            continue  # nothing to swap; other ops already changed the text
        container, i = rng.choice(adjacent)
        container.children[i], container.children[i + 1] = (
            container.children[i + 1],
            container.children[i],
        )
    return _render_tree(root)


def mutate(source: str, spec: MutationSpec) -> tuple[str, dict]:
    """Derive a labeled clone. The result always parses."""
    rng = random.Random(spec.seed)
    if spec.kind == "type1":
        mutated = _mutate_type1(source, rng)
        label = {"type": "type1"}
    elif spec.kind == "type2":
        mutated = _mutate_type2(source, rng)
        label = {"type": "type2"}
    elif spec.kind == "type3":
        mutated = _mutate_type3(source, rng, spec.edit_ops)
        label = {
            "type": "type3",
            "edits": {
                "insert": spec.edit_ops.insert,
                "delete": spec.edit_ops.delete,
                "reorder": spec.edit_ops.reorder,
            },
        }
    else:
        raise ValueError(f"unknown mutation kind {spec.kind!r}")
    parse(tokenize(mutated))  # mutants must stay inside the language
    return mutated, label


# -- corpus assembly ---------------------------------------------------------


def build_corpus(
    out_dir: str | Path,
    originals: int,
    unrelated: int,
    types: Sequence[str] = ("type1", "type2", "type3"),
    seed: int = 0,
    statements_range: tuple[int, int] = (14, 40),
) -> Path:
    """Write originals, one mutant per original (types cycling), and
    unrelated programs, plus manifest.json naming the true clone pairs.
    Distinct programs are guaranteed distinct after normalization.
    Returns the manifest path."""
    rng = random.Random(seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    seen_shapes: set[tuple[str, ...]] = set()

    def fresh_program() -> str:
        for _ in range(64):
            spec = SizeSpec(statements=rng.randint(*statements_range),
                            max_depth=rng.choice([2, 2, 3]))
            text = generate_program(rng.randrange(2**32), spec)
            shape = tuple(s.text for s in _normalized(text))
            if shape not in seen_shapes:
                seen_shapes.add(shape)
                return text
        raise RuntimeError("generator kept colliding; widen statements_range")

    manifest = []
    for i in range(originals):
        original = fresh_program()
        name = f"orig_{i:03d}.mp"
        (out / name).write_text(original, encoding="utf-8")
        kind = types[i % len(types)]
        mutated, label = mutate(
            original,
            MutationSpec(kind=kind, seed=rng.randrange(2**32),
                         edit_ops=EditOps(insert=1, delete=0, reorder=1)),
        )
        mut_name = f"mut_{i:03d}_{kind}.mp"
        (out / mut_name).write_text(mutated, encoding="utf-8")
        manifest.append({"original": name, "mutant": mut_name, "type": label["type"]})
    for i in range(unrelated):
        (out / f"unrel_{i:03d}.mp").write_text(fresh_program(), encoding="utf-8")

    manifest_path = out / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return manifest_path


def _normalized(source: str):
    from .frontend import normalize

    return normalize(parse(tokenize(source)))


# -- evaluation ---------------------------------------------------------------


_BLOCK_BUCKETS = ((1, 4), (5, 9), (10, 19), (20, 39), (40, None))
_LINE_BUCKETS = ((1, 19), (20, 39), (40, 79), (80, None))


def _bucket(value: int, buckets) -> str:
    for lo, hi in buckets:
        if hi is None:
            if value >= lo:
                return f"{lo}+"
        elif lo <= value <= hi:
            return f"{lo}-{hi}"
    return "0"


def evaluate(
    corpus_dir: str | Path,
    config: RunConfig,
    alpha_values: Sequence[int],
    threshold: float | None = None,
    csv_path: str | Path | None = None,
    json_path: str | Path | None = None,
) -> list[EvalResult]:
    """Index the corpus once, sweep alpha, score candidate pairs
    against the manifest. Precision is TP / (TP + FP); the
    false-positive rate quoted elsewhere is 1 - precision."""
    config.validate()
    root = Path(corpus_dir)
    manifest_path = root / "manifest.json"
    if not manifest_path.exists():
        raise ValueError(f"corpus manifest missing: {manifest_path}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    threshold = config.threshold if threshold is None else threshold

    stamp = ConfigStamp.from_config(config)
    index = FingerprintIndex(config_stamp=stamp)
    sizes: dict[str, tuple[int, int]] = {}
    for path in sorted(root.rglob("*.mp"), key=lambda p: p.relative_to(root).as_posix()):
        program_id = path.relative_to(root).as_posix()
        source = path.read_text(encoding="utf-8")
        result = run_pipeline(source, program_id, config)
        index.add_program(record_from_program(result.program, str(path), stamp))
        sizes[program_id] = (len(result.cfg.real_blocks), len(source.splitlines()))

    labeled: set[frozenset[str]] = set()
    for entry in manifest:
        pair = frozenset({entry["original"], entry["mutant"]})
        for pid in pair:
            if pid not in index.records:
                raise ValueError(f"manifest names {pid!r} but the corpus lacks it")
        labeled.add(pair)

    probes = {
        pid: record.to_program_fingerprint()
        for pid, record in sorted(index.records.items())
        if record.fingerprints
    }

    results: list[EvalResult] = []
    for alpha in alpha_values:
        t0 = time.perf_counter()
        pairs: set[frozenset[str]] = set()
        for pid, probe in probes.items():
            for candidate in index.query(probe, alpha, threshold, config.mode):
                pairs.add(frozenset({pid, candidate.program_id}))
        by_blocks: dict[str, dict[str, int]] = {}
        by_lines: dict[str, dict[str, int]] = {}
        tp = fp = 0
        for pair in pairs:
            a, b = sorted(pair)
            hit = pair in labeled
            tp += hit
            fp += not hit
            block_key = _bucket(min(sizes[a][0], sizes[b][0]), _BLOCK_BUCKETS)
            line_key = _bucket(min(sizes[a][1], sizes[b][1]), _LINE_BUCKETS)
            for table, key in ((by_blocks, block_key), (by_lines, line_key)):
                row = table.setdefault(key, {"candidates": 0, "tp": 0, "fp": 0})
                row["candidates"] += 1
                row["tp"] += hit
                row["fp"] += not hit
        total = len(pairs)
        results.append(
            EvalResult(
                alpha=alpha,
                candidates=total,
                tp=tp,
                fp=fp,
                precision=(tp / total) if total else None,
                by_blocks=by_blocks,
                by_lines=by_lines,
                wall_time_s=time.perf_counter() - t0,
            )
        )

    if csv_path is not None:
        with open(csv_path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["alpha", "candidates", "tp", "fp", "precision"])
            for r in results:
                writer.writerow(
                    [r.alpha, r.candidates, r.tp, r.fp,
                     "" if r.precision is None else f"{r.precision:.6f}"]
                )
    if json_path is not None:
        Path(json_path).write_text(
            json.dumps([r.to_dict() for r in results], indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    return results


# -- scaling ------------------------------------------------------------------


def scaling_run(
    sizes: Sequence[int],
    config: RunConfig,
    seed: int = 0,
    repeats: int = 5,
    query_loops: int = 25,
    csv_path: str | Path | None = None,
) -> list[dict]:
    """Best wall time of one query against indexes of each size.

    One corpus of max(sizes) programs is generated; each index is a
    prefix, so per-record cost is identically distributed across sizes
    and only the record count varies. Record sizes are drawn from a
    narrow band to keep per-record cost roughly uniform; otherwise a
    few path-heavy programs early in the corpus would bend the curve.
    Repeats are interleaved across sizes and the minimum is kept, so
    load spikes and clock drift cannot skew one size against another.
    Runs single-worker by design.
    """
    config.validate()
    rng = random.Random(seed)
    top = max(sizes)
    stamp = ConfigStamp.from_config(config)
    fingerprints = []
    for i in range(top):
        spec = SizeSpec(statements=rng.randint(20, 28))
        text = generate_program(rng.randrange(2**32), spec)
        result = run_pipeline(text, f"scale_{i:04d}", config)
        fingerprints.append(record_from_program(result.program, f"scale_{i:04d}.mp", stamp))
    probe = run_pipeline(
        generate_program(rng.randrange(2**32), SizeSpec(statements=26)),
        "probe", config,
    ).program

    indexes: list[tuple[int, FingerprintIndex]] = []
    for size in sizes:
        index = FingerprintIndex(config_stamp=stamp)
        for record in fingerprints[:size]:
            index.add_program(record)
        indexes.append((size, index))

    best: dict[int, float] = {size: float("inf") for size in sizes}
    candidates: dict[int, int] = {}
    scorings: dict[int, int] = {}
    for _, index in indexes:
        index.query(probe, config.alpha, config.threshold, config.mode)  # warmup
    for _ in range(repeats):
        for size, index in indexes:
            t0 = time.perf_counter()
            for _ in range(query_loops):
                found = len(index.query(probe, config.alpha, config.threshold, config.mode))
            best[size] = min(best[size], (time.perf_counter() - t0) / query_loops)
            candidates[size] = found
            scorings[size] = index.last_query_scorings

    rows: list[dict] = [
        {
            "size": size,
            "seconds": best[size],
            "candidates": candidates[size],
            "scorings": scorings[size],
        }
        for size in sizes
    ]

    if csv_path is not None:
        with open(csv_path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["size", "seconds", "candidates"])
            for row in rows:
                writer.writerow([row["size"], f"{row['seconds']:.9f}", row["candidates"]])
    return rows
