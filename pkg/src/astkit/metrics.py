"""Corpus-level BLEU with brevity penalty, single reference.

Scores are geometric means of clipped modified n-gram precisions
(orders 1..max) times a brevity penalty, scaled to [0, 100]. Inputs are
raw (detokenized) text; the scorer applies its own tokenization so that
results are comparable across systems. The default scheme splits
punctuation from adjoining word characters the way the classic mteval
"13a" tokenizer does; a plain whitespace scheme is available for
pre-tokenized input.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum


class TokenizationScheme(str, Enum):
    PUNCT_SPLIT_13A_STYLE = "punct_split_13a_style"
    WHITESPACE_ONLY = "whitespace_only"


class Smoothing(str, Enum):
    NONE = "none"
    ADD_EPSILON = "add_epsilon"


EPSILON_COUNT = 0.1  # stand-in numerator for zero n-gram matches


@dataclass(frozen=True)
class BleuConfig:
    max_ngram_order: int = 4
    lowercase: bool = False
    tokenization_scheme: TokenizationScheme = TokenizationScheme.PUNCT_SPLIT_13A_STYLE
    smoothing: Smoothing = Smoothing.NONE

    def __post_init__(self) -> None:
        if self.max_ngram_order < 1:
            raise ValueError(f"max_ngram_order must be >= 1, got {self.max_ngram_order}")


@dataclass(frozen=True)
class BleuReport:
    bleu: float
    precisions: tuple[float, ...]
    brevity_penalty: float
    hyp_length: int
    ref_length: int
    correct: tuple[int, ...] = field(default=(), repr=False)
    total: tuple[int, ...] = field(default=(), repr=False)

    def keyvalues(self) -> str:
        lines = [f"bleu={self.bleu:.6f}"]
        for i, p in enumerate(self.precisions, start=1):
            lines.append(f"precision_{i}={p:.6f}")
        lines.append(f"brevity_penalty={self.brevity_penalty:.6f}")
        lines.append(f"hyp_length={self.hyp_length}")
        lines.append(f"ref_length={self.ref_length}")
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        ps = "/".join(f"{100 * p:.1f}" for p in self.precisions)
        return (
            f"BLEU = {self.bleu:.2f} {ps} "
            f"(BP = {self.brevity_penalty:.3f}, hyp_len = {self.hyp_length}, "
            f"ref_len = {self.ref_length})"
        )


# 13a-style splitting: most ASCII punctuation is always separated; period
# and comma stay attached between digits; a dash after a digit splits.
_PUNCT_RE = re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])")
_NONDIGIT_DOT_RE = re.compile(r"([^0-9])([\.,])")
_DOT_NONDIGIT_RE = re.compile(r"([\.,])([^0-9])")
_DIGIT_DASH_RE = re.compile(r"([0-9])(\-)")


def bleu_tokenize(text: str, cfg: BleuConfig = BleuConfig()) -> list[str]:
    """Tokenize one segment for scoring under the configured scheme."""
    if cfg.lowercase:
        text = text.lower()
    if cfg.tokenization_scheme is TokenizationScheme.WHITESPACE_ONLY:
        return text.split()
    text = f" {text} "
    text = _PUNCT_RE.sub(r" \1 ", text)
    text = _NONDIGIT_DOT_RE.sub(r"\1 \2 ", text)
    text = _DOT_NONDIGIT_RE.sub(r" \1 \2", text)
    text = _DIGIT_DASH_RE.sub(r"\1 \2 ", text)
    return text.split()


def _ngram_counts(tokens: list[str], order: int) -> Counter:
    return Counter(tuple(tokens[i : i + order]) for i in range(len(tokens) - order + 1))


def corpus_bleu(hyps: list[str], refs: list[str], cfg: BleuConfig = BleuConfig()) -> BleuReport:
    """Corpus BLEU of hypothesis lines against aligned single references.

    Clipped n-gram matches are aggregated over the whole corpus before the
    precisions are formed. Orders for which the corpus contains no
    hypothesis n-grams at all are dropped from the geometric mean, which
    keeps identity scoring at 100 for very short corpora. With smoothing
    ``none``, any remaining zero precision makes the score 0.
    """
    if len(hyps) != len(refs):
        raise ValueError(f"corpus size mismatch: {len(hyps)} hypotheses, {len(refs)} references")
    if not hyps:
        raise ValueError("empty corpus")

    orders = cfg.max_ngram_order
    correct = [0] * orders
    total = [0] * orders
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hyps, refs):
        hyp_tokens = bleu_tokenize(hyp, cfg)
        ref_tokens = bleu_tokenize(ref, cfg)
        hyp_len += len(hyp_tokens)
        ref_len += len(ref_tokens)
        for n in range(1, orders + 1):
            hyp_grams = _ngram_counts(hyp_tokens, n)
            if not hyp_grams:
                break
            ref_grams = _ngram_counts(ref_tokens, n)
            total[n - 1] += sum(hyp_grams.values())
            correct[n - 1] += sum(
                min(count, ref_grams.get(gram, 0)) for gram, count in hyp_grams.items()
            )

    precisions = []
    for n in range(orders):
        if total[n] == 0:
            continue  # order longer than every sentence in the corpus
        if correct[n] == 0 and cfg.smoothing is Smoothing.ADD_EPSILON:
            precisions.append(EPSILON_COUNT / total[n])
        else:
            precisions.append(correct[n] / total[n])

    if hyp_len == 0:
        brevity_penalty = 0.0
    elif hyp_len < ref_len:
        brevity_penalty = math.exp(1.0 - ref_len / hyp_len)
    else:
        brevity_penalty = 1.0

    if not precisions or any(p == 0.0 for p in precisions):
        bleu = 0.0
    else:
        bleu = 100.0 * brevity_penalty * math.exp(
            sum(math.log(p) for p in precisions) / len(precisions)
        )

    padded = precisions + [0.0] * (orders - len(precisions))
    return BleuReport(
        bleu=bleu,
        precisions=tuple(padded[:orders]),
        brevity_penalty=brevity_penalty,
        hyp_length=hyp_len,
        ref_length=ref_len,
        correct=tuple(correct),
        total=tuple(total),
    )
