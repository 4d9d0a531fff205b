import random

from twistknot.words import Generator, Word


def random_word(rng: random.Random, gens, max_len: int = 12) -> Word:
    length = rng.randrange(max_len + 1)
    return Word((rng.choice(gens), rng.choice((-1, 1))) for _ in range(length))


def random_nonempty_word(rng: random.Random, gens, max_len: int = 12) -> Word:
    while True:
        w = random_word(rng, gens, max_len)
        if not w.is_identity:
            return w


ABC = (Generator("a"), Generator("b"), Generator("c"))
