"""Depth-limited portraits of the production action of a state word.

The k-portrait of u labels every vertex s of the |alphabet|-ary tree with
|s| < k by the one-letter restriction of the production function of the
section of u at s.  Portraits multiply without touching the machine again
and expose the geometric shape (homogeneous levels) that the structure
theory runs on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .machine import PreconditionError, BudgetError, state_word

DEFAULT_PORTRAIT_BUDGET = 1 << 17  # total vertices


def compose(first, then):
    """Permutation doing `first`, then `then` (image tuples)."""
    return tuple(then[first[i]] for i in range(len(first)))


def identity_perm(n):
    return tuple(range(n))


def is_identity(perm):
    return all(perm[i] == i for i in range(len(perm)))


def perm_label(perm, letters=None):
    """Short display form: 'id', 'σ' for the two-letter swap, else images."""
    if is_identity(perm):
        return "id"
    if len(perm) == 2:
        return "σ"
    if letters is None:
        letters = tuple(str(i) for i in range(len(perm)))
    return "(" + " ".join("%s>%s" % (letters[i], letters[perm[i]])
                          for i in range(len(perm)) if perm[i] != i) + ")"


def node_count(n_letters, depth):
    if n_letters == 1:
        return depth
    return (n_letters ** depth - 1) // (n_letters - 1)


@dataclass(frozen=True)
class Portrait:
    """Complete n-ary tree of permutations in level order.

    Vertex s_1...s_l sits at offset(l) + (s_1...s_l read base n); children
    of the node at in-level position p are at positions p*n + j one level
    down.
    """

    n_letters: int
    depth: int
    labels: tuple

    def __post_init__(self):
        if self.depth < 1:
            raise PreconditionError("portrait depth must be >= 1")
        if len(self.labels) != node_count(self.n_letters, self.depth):
            raise PreconditionError("label count does not match depth")

    def level_offset(self, level):
        return node_count(self.n_letters, level)

    def level(self, level):
        """Labels of all vertices with |s| == level, in vertex order."""
        lo = self.level_offset(level)
        return self.labels[lo:lo + self.n_letters ** level]

    @property
    def root(self):
        return self.labels[0]

    def label_at(self, s):
        """Label of the vertex addressed by the letter word s (|s| < depth)."""
        if len(s) >= self.depth:
            raise PreconditionError("vertex depth %d out of range" % len(s))
        pos = 0
        for j in s:
            pos = pos * self.n_letters + j
        return self.labels[self.level_offset(len(s)) + pos]

    def subtree(self, j) -> "Portrait":
        """The (depth-1)-portrait hanging under root child j."""
        if self.depth < 2:
            raise PreconditionError("no subtrees below depth 2")
        n = self.n_letters
        labels = []
        for level in range(1, self.depth):
            lo = self.level_offset(level)
            span = n ** (level - 1)
            labels.extend(self.labels[lo + j * span: lo + (j + 1) * span])
        return Portrait(n, self.depth - 1, tuple(labels))

    def apply(self, s):
        """Image of the letter word s (|s| <= depth) read off the labels."""
        if len(s) > self.depth:
            raise PreconditionError("word longer than portrait depth")
        out = []
        pos = 0
        for level, j in enumerate(s):
            out.append(self.labels[self.level_offset(level) + pos][j])
            pos = pos * self.n_letters + j
        return tuple(out)


def identity_portrait(n_letters, depth) -> Portrait:
    e = identity_perm(n_letters)
    return Portrait(n_letters, depth, (e,) * node_count(n_letters, depth))


def _row_perm(machine, word):
    out = []
    for i in range(machine.n_letters):
        cur = i
        for x in word:
            cur = int(machine.rho[x, cur])
        out.append(cur)
    return tuple(out)


def portrait_of(machine, u, k, budget=DEFAULT_PORTRAIT_BUDGET) -> Portrait:
    """The k-portrait of the state word u.

    Vertex s carries the one-letter action of the section of u at s;
    children are ordered by the machine's letter order.  Needs an
    invertible machine so every label is a permutation.
    """
    if k < 1:
        raise PreconditionError("portrait depth must be >= 1")
    if not machine.is_invertible():
        raise PreconditionError("portraits need an invertible machine")
    u = state_word(machine, u)
    if not u:
        raise PreconditionError("state word must be non-empty")
    total = node_count(machine.n_letters, k)
    if total > budget:
        raise BudgetError("portrait needs %d vertices (budget %d)" % (total, budget),
                          required=total, budget=budget)
    delta, rho = machine.delta, machine.rho
    labels = [_row_perm(machine, u)]
    words = [u]
    for _ in range(1, k):
        next_words = []
        for w in words:
            for j in range(machine.n_letters):
                # section at child j: step every position of w, carrying j
                cur = j
                img = []
                for x in w:
                    img.append(int(delta[cur, x]))
                    cur = int(rho[x, cur])
                child = tuple(img)
                next_words.append(child)
                labels.append(_row_perm(machine, child))
        words = next_words
    return Portrait(machine.n_letters, k, tuple(labels))


def portrait_product(p, q) -> Portrait:
    """Portrait of the concatenated word, p's word acting first.

    Root is the composition; the subtree of the result at letter j is the
    product of p's subtree at j with q's subtree at p.root(j).
    """
    if p.n_letters != q.n_letters or p.depth != q.depth:
        raise PreconditionError("portraits must share alphabet and depth")
    n = p.n_letters
    labels = [[] for _ in range(p.depth)]

    def fill(pp, qq, level, pos):
        labels[level].append((pos, compose(pp.root, qq.root)))
        if pp.depth > 1:
            for j in range(n):
                fill(pp.subtree(j), qq.subtree(pp.root[j]), level + 1, pos * n + j)

    fill(p, q, 0, 0)
    flat = []
    for level_labels in labels:
        level_labels.sort()
        flat.extend(lab for _, lab in level_labels)
    return Portrait(n, p.depth, tuple(flat))


@dataclass(frozen=True)
class HomogeneityReport:
    kind: str            # "homogeneous" | "almost_homogeneous" | "neither"
    level_labels: tuple  # per level: the constant perm, or None when mixed


def classify_homogeneity(portrait) -> HomogeneityReport:
    """Homogeneous: every level is label-constant.  Almost homogeneous:
    the depth-(k-1) prefix is homogeneous and the deepest level is
    constant inside each root-child subtree."""
    level_labels = []
    constant = []
    for level in range(portrait.depth):
        labs = portrait.level(level)
        if all(l == labs[0] for l in labs):
            level_labels.append(labs[0])
            constant.append(True)
        else:
            level_labels.append(None)
            constant.append(False)
    if all(constant):
        return HomogeneityReport("homogeneous", tuple(level_labels))
    if all(constant[:-1]):
        deepest = portrait.level(portrait.depth - 1)
        span = portrait.n_letters ** (portrait.depth - 2)
        ok = True
        for j in range(portrait.n_letters):
            chunk = deepest[j * span:(j + 1) * span]
            if any(l != chunk[0] for l in chunk):
                ok = False
                break
        if ok:
            return HomogeneityReport("almost_homogeneous", tuple(level_labels))
    return HomogeneityReport("neither", tuple(level_labels))


def build_j_tau(j_portrait, taus) -> Portrait:
    """Extend a homogeneous portrait J one level down, labeling all of
    child i's deepest vertices with taus[i]."""
    n = j_portrait.n_letters
    if len(taus) != n:
        raise PreconditionError("need one permutation per letter")
    if classify_homogeneity(j_portrait).kind != "homogeneous":
        raise PreconditionError("prefix must be homogeneous")
    span = n ** (j_portrait.depth - 1)
    deepest = []
    for i in range(n):
        deepest.extend([tuple(taus[i])] * span)
    return Portrait(n, j_portrait.depth + 1, j_portrait.labels + tuple(deepest))


def render_text(portrait, letters=None) -> str:
    """Indented tree, one vertex per line."""
    n = portrait.n_letters
    if letters is None:
        letters = tuple(str(i) for i in range(n))
    lines = []

    def walk(s):
        level = len(s)
        name = "".join(letters[j] for j in s) if s else "(root)"
        lines.append("%s%s %s" % ("  " * level, name,
                                  perm_label(portrait.label_at(s), letters)))
        if level + 1 < portrait.depth:
            for j in range(n):
                walk(s + (j,))

    walk(())
    return "\n".join(lines)


def render_dot(portrait, letters=None) -> str:
    n = portrait.n_letters
    if letters is None:
        letters = tuple(str(i) for i in range(n))
    lines = ["digraph portrait {", "  node [shape=circle];"]

    def node_id(s):
        return "v" + "_".join(str(j) for j in s) if s else "root"

    def walk(s):
        lines.append('  %s [label="%s"];'
                     % (node_id(s), perm_label(portrait.label_at(s), letters)))
        if len(s) + 1 < portrait.depth:
            for j in range(n):
                walk(s + (j,))
                lines.append('  %s -> %s [label="%s"];'
                             % (node_id(s), node_id(s + (j,)), letters[j]))

    walk(())
    lines.append("}")
    return "\n".join(lines)
