"""Brute-force reference implementations, kept independent of gsmatch internals.

Everything here works on plain Python strings.
"""

from __future__ import annotations

import random

ALPHABET = "acgt"


def random_dna(rng: random.Random, n: int, alphabet: str = ALPHABET) -> str:
    return "".join(rng.choice(alphabet) for _ in range(n))


def suffix_array(text: str) -> list[int]:
    return sorted(range(len(text)), key=lambda i: text[i:])


def occurrences(text: str, pattern: str) -> set[int]:
    return {p for p in range(len(text) - len(pattern) + 1) if text.startswith(pattern, p)}


def prefix_order(pattern: str, suffix: str) -> int:
    """-1 / 0 / 1 for pattern below / prefix of / above the suffix."""
    head = suffix[: len(pattern)]
    if head == pattern:
        return 0
    return -1 if pattern < head else 1


def compact_trie_labels(text: str, sentinel: str = "$") -> tuple[set[str], set[str]]:
    """Path labels of (internal nodes incl. root, leaves) of the suffix tree of text+sentinel.

    An internal node sits at every substring followed by at least two
    distinct symbols; a leaf at every suffix.
    """
    t = text + sentinel
    suffixes = [t[i:] for i in range(len(t))]
    follow: dict[str, set[str]] = {}
    for s in suffixes:
        for k in range(len(s)):
            follow.setdefault(s[:k], set()).add(s[k])
    internal = {u for u, nxt in follow.items() if len(nxt) >= 2} | {""}
    return internal, set(suffixes)
