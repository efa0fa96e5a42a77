"""Permutations of {1..d} with Coxeter length and reduced words.

The one-line form is a tuple of images: w.images[i-1] = w(i).  Composition
is left to right, (v * w)(i) = w(v(i)), so a reduced word [a1, a2, ...]
multiplies out as s_a1 * s_a2 * ... in list order.  Length is the inversion
count, which matches the minimal word length in adjacent transpositions.
"""

from __future__ import annotations

from itertools import permutations as _perms


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(d: int) -> "Permutation":
        return Permutation(range(1, d + 1))

    @staticmethod
    def transposition(d: int, i: int) -> "Permutation":
        """The adjacent transposition s_i swapping i and i+1, 1 <= i <= d-1."""
        if not 1 <= i <= d - 1:
            raise ValueError(f"generator index {i} out of range for degree {d}")
        im = list(range(1, d + 1))
        im[i - 1], im[i] = im[i], im[i - 1]
        return Permutation(im)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(other.images[x - 1] for x in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(inv)

    def length(self) -> int:
        """Number of inversions, equal to the minimal generator word length."""
        im = self.images
        n = len(im)
        return sum(1 for i in range(n) for j in range(i + 1, n) if im[i] > im[j])

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word by bubble sort; product of the listed s_i equals self."""
        arr = list(self.images)
        word: list[int] = []
        changed = True
        while changed:
            changed = False
            for i in range(len(arr) - 1):
                if arr[i] > arr[i + 1]:
                    arr[i], arr[i + 1] = arr[i + 1], arr[i]
                    word.append(i + 1)
                    changed = True
        return tuple(word)

    def descents(self) -> tuple[int, ...]:
        """Right descents: i with length(self * s_i) < length(self)."""
        im = self.images
        out = []
        for i in range(1, len(im)):
            if im.index(i + 1) < im.index(i):
                out.append(i)
        return tuple(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation{self.images}"


MAX_ENUM_DEGREE = 8


def symmetric_group(d: int) -> list[Permutation]:
    """All d! permutations, refused above degree 8 to keep sizes sane."""
    if d < 1 or d > MAX_ENUM_DEGREE:
        raise ValueError(f"degree must be between 1 and {MAX_ENUM_DEGREE}, got {d}")
    return [Permutation(p) for p in _perms(range(1, d + 1))]
