"""The box-operation semigroup represented by projective maps.

Each word w over {i, 1, 2} names a composite box operation (rightmost
letter first) and a projective map: the unique map carrying the seed
vertex frame (p, q, r, s) to the vertex frame of the word-image box.
Words whose i-count and tau-count are both even admit a frame labeling
making the map carry the marks too; those are the members.  For words with
an odd count the mark condition provably fails under either labeling, and
the element is kept but flagged (quarantined) so mark-dependent
computations can skip it.  On members the correspondence w -> map reverses
products: map(vw) = map(w) . map(v).
"""

import math

from . import boxes, linalg3, projective
from .boxes import LETTERS, MarkedBox, apply_box_op
from .errors import BadLetter, MarkMismatch
from .projective import ProjMap, dist, map_from_correspondence, spectrum

MARK_TOL = 1e-9
DEDUPE_TOL = 1e-9
FIX_SEP_TOL = 1e-3


def reduce_word(word):
    """Cancel double involution letters; validate the alphabet."""
    for letter in word:
        if letter not in LETTERS:
            raise BadLetter("unknown letter %r" % (letter,))
    out = []
    for letter in word:
        if out and letter == "i" and out[-1] == "i":
            out.pop()
        else:
            out.append(letter)
    return "".join(out)


def predicted_member(word):
    """Mark consistency from letter parities alone."""
    n_i = word.count("i")
    n_tau = len(word) - n_i
    return n_i % 2 == 0 and n_tau % 2 == 0


def iter_words(maxlen, alphabet=LETTERS):
    """Reduced words up to maxlen, breadth first, children on the left."""
    level = [""]
    yield ""
    for _ in range(maxlen):
        nxt = []
        for word in level:
            for letter in alphabet:
                if letter == "i" and word.startswith("i"):
                    continue
                nxt.append(letter + word)
        for word in nxt:
            yield word
        level = nxt


class GroupElement:
    """A word, its projective map, and its mark residual."""

    __slots__ = ("word", "map", "mark_residual", "box")

    def __init__(self, word, pmap, mark_residual, box=None):
        self.word = word
        self.map = pmap
        self.mark_residual = mark_residual
        self.box = box

    @property
    def member(self):
        return self.mark_residual <= MARK_TOL

    def __repr__(self):
        flag = "" if self.member else ", quarantined"
        return "GroupElement(%r, residual=%.3e%s)" % (
            self.word, self.mark_residual, flag)


def _mark_residual(pmap, seed, frame_box):
    """How far the map is from carrying the seed marks to the image marks."""
    img_t = pmap.apply(seed.t)
    img_b = pmap.apply(seed.b)
    if img_t.is_exact and frame_box.t.is_exact:
        if img_t == frame_box.t and img_b == frame_box.b:
            return 0.0
    return max(dist(img_t, frame_box.t), dist(img_b, frame_box.b))


def rho_hat(word, seed, require_member=False, image_box=None):
    """The projective map of a word, with mark-consistency bookkeeping.

    The map is pinned by the vertex frames alone.  Both admissible frame
    labelings of the image box are tried and the mark-consistent one wins;
    ties fall back to the direct labeling.  With require_member=True a
    quarantined word raises MarkMismatch instead of returning flagged.
    """
    word = reduce_word(word)
    if image_box is None:
        image_box = boxes.apply_word(seed, word)
    src = (seed.p, seed.q, seed.r, seed.s)
    candidates = []
    for labeled in (
        (image_box.p, image_box.q, image_box.r, image_box.s),
        (image_box.q, image_box.p, image_box.s, image_box.r),
    ):
        pmap = map_from_correspondence(src, labeled)
        frame_box = MarkedBox(*labeled, image_box.t, image_box.b)
        candidates.append((_mark_residual(pmap, seed, frame_box), pmap))
    res_std, map_std = candidates[0]
    res_swp, map_swp = candidates[1]
    if res_swp < res_std:
        residual, pmap = res_swp, map_swp
    else:
        residual, pmap = res_std, map_std
    if require_member and residual > MARK_TOL:
        raise MarkMismatch("word %r has mark residual %.3e" % (word, residual))
    return GroupElement(word, pmap, residual, image_box)


def compare_maps(a, b):
    """Distance between two maps up to scale; exactly 0 for equal canonicals."""
    if a.rows == b.rows:
        return 0.0
    fa = linalg3.sup_normalize(a.float_rows)
    fb = linalg3.sup_normalize(b.float_rows)
    return linalg3.sup_norm(linalg3.mat_sub(fa, fb))


def enumerate_group(seed, maxlen, dedupe=True):
    """All reduced-word elements up to maxlen, deduped to distinct maps.

    Breadth-first deterministic: the shortest word for each distinct map is
    the one kept.  Boxes are carried along the word tree so each extension
    costs one box operation.
    """
    root = rho_hat("", seed, image_box=seed)
    elements = [root]
    seen = {root.map.rows: root}
    buckets = {}

    def bucket_key(pmap):
        rows = linalg3.sup_normalize(pmap.float_rows)
        return tuple(round(v, 6) for row in rows for v in row)

    if not root.map.is_exact:
        buckets[bucket_key(root.map)] = [root]
    level = [root]
    for _ in range(maxlen):
        nxt = []
        for parent in level:
            for letter in LETTERS:
                if letter == "i" and parent.word.startswith("i"):
                    continue
                word = letter + parent.word
                image_box = apply_box_op(parent.box, letter)
                elem = rho_hat(word, seed, image_box=image_box)
                nxt.append(elem)
                if not dedupe:
                    elements.append(elem)
                    continue
                if elem.map.is_exact:
                    if elem.map.rows not in seen:
                        seen[elem.map.rows] = elem
                        elements.append(elem)
                else:
                    key = bucket_key(elem.map)
                    hits = buckets.setdefault(key, [])
                    if not any(compare_maps(elem.map, h.map) <= DEDUPE_TOL for h in hits):
                        hits.append(elem)
                        elements.append(elem)
        level = nxt
    return elements


def dual_element(g):
    """The induced map on lines (inverse transpose up to scale)."""
    return g.map.dual()


def find_loxodromics(elements, gap_tol=projective.GAP_TOL, include_quarantined=False):
    """Spectra of the loxodromic elements among the given ones.

    Quarantined elements are skipped by default since every mark-dependent
    consumer downstream assumes membership.
    """
    out = []
    for g in elements:
        if not include_quarantined and not g.member:
            continue
        if not g.word:
            continue
        rep = spectrum(g.map, gap_tol=gap_tol)
        if rep.spec_class == "loxodromic":
            out.append((g, rep))
    return out


def fixed_set(report):
    return (report.attracting_point, report.saddle_point, report.repelling_point)


def find_disjoint_pair(lox_pairs, sep_tol=FIX_SEP_TOL):
    """First pair (in given order) whose fixed point triples stay apart."""
    for a in range(len(lox_pairs)):
        for b in range(a + 1, len(lox_pairs)):
            ga, ra = lox_pairs[a]
            gb, rb = lox_pairs[b]
            sep = min(dist(x, y) for x in fixed_set(ra) for y in fixed_set(rb))
            if sep > sep_tol:
                return (ga, ra), (gb, rb), sep
    return None


def finite_order_search(seed, maxlen=6, max_order=6, tol=1e-8):
    """Scan distinct elements for finite projective order.

    Returns (word, order) pairs sorted by word; "none of order three" is a
    legitimate outcome and is reported by absence.
    """
    hits = []
    ident = linalg3.identity3()
    for elem in enumerate_group(seed, maxlen):
        if not elem.word:
            continue
        rows = linalg3.mat_float(elem.map.rows)
        d = linalg3.det3(rows)
        if d == 0.0:
            continue
        scale = math.copysign(abs(d) ** (1.0 / 3.0), d)
        rows = linalg3.mat_scale(rows, 1.0 / scale)
        power = rows
        for k in range(2, max_order + 1):
            power = linalg3.matmul(power, rows)
            norm = linalg3.sup_normalize(power)
            if linalg3.sup_norm(linalg3.mat_sub(norm, ident)) <= tol:
                hits.append((elem.word, k))
                break
    return hits
