#!/usr/bin/env python3
"""Regenerate the bundled demo corpus (66 scripture-styled documents).

The corpus is synthetic but written in an early-modern English register with
heavy formulaic repetition and one book rendered in archaic orthography, so
search, related queries, document similarity, and alignment all have real
material to work on. Output is deterministic; run from the repo root:

    python scripts/generate_sample.py
"""

from __future__ import annotations

import json
import random
import re
import shutil
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "chargram" / "data" / "kjv_sample"

NAMES = [
    "Adam", "Seth", "Enos", "Noah", "Shem", "Ham", "Japheth", "Abram", "Sarai",
    "Isaac", "Rebekah", "Jacob", "Esau", "Joseph", "Judah", "Moses", "Aaron",
    "Miriam", "Joshua", "Caleb", "Samuel", "Saul", "David", "Solomon", "Elijah",
    "Elisha", "Hezekiah", "Josiah", "Daniel", "Jonah",
]

PLACES = [
    "Eden", "Ararat", "Shinar", "Canaan", "Egypt", "Goshen", "Sinai", "Moab",
    "Jericho", "Bethel", "Hebron", "Gilead", "Zion", "Babylon", "Nineveh",
]

ROLES = [
    "chief of the butlers", "chief of the bakers", "chief of the cup-bearers",
    "chief of the eunuchs", "keeper of the prison", "captain of the guard",
]

THINGS = [
    "a vineyard", "an altar of stone", "a well of springing water", "a pillar",
    "an ark of gopher wood", "a tabernacle", "flocks and herds", "a sheaf of corn",
]

OPENINGS = [
    "In the beginning God created the heaven and the earth.",
    "And the earth was without form, and void; and darkness was upon the face of the deep.",
    "Now these are the generations of the sons of men, after their families.",
    "And it came to pass in those days, that the word of the LORD came unto the people.",
]

TEMPLATES = [
    "And {n1} begat {n2}, and {n2} begat {n3}: these are the sons of {n1}.",
    "And {n1} lived an hundred and {num} years, and begat sons and daughters.",
    "And the LORD said unto {n1}, Arise, and get thee into the land of {p1}.",
    "And {n1} journeyed from {p1} toward {p2}, he and all his household with him.",
    "And {n1} builded {thing} there, and called upon the name of the LORD.",
    "And it came to pass, that {n1} dreamed a dream, and behold, the {role} stood before him.",
    "And the {role} told his dream unto {n1}, and {n1} interpreted it.",
    "And {n1} said unto {n2}, Blessed be the LORD, which hath not left thee this day.",
    "And the children of {n1} dwelt in the land of {p1}, and multiplied exceedingly.",
    "And {n1} took {n2} his brother, and they went down into {p1} to buy corn.",
    "In the {num} year of {n1} king of {p1}, {n2} began to reign over {p2}.",
    "And {n1} did that which was right in the sight of the LORD, as did {n2} his father.",
    "And the word of the LORD came unto {n1}, saying, Go unto {p1}, that great city.",
    "So {n1} arose, and went unto {p1}, according unto the word of the LORD.",
    "And {n1} made a feast unto all his servants, even unto the {role}.",
    "Blessed is the man that walketh not in the counsel of the ungodly.",
    "The LORD is my shepherd; I shall not want: he maketh me to lie down in green pastures.",
    "O give thanks unto the LORD; for he is good: for his mercy endureth for ever.",
    "A soft answer turneth away wrath: but grievous words stir up anger.",
    "The fear of the LORD is the beginning of wisdom: and knowledge of the holy is understanding.",
    "And {n1} was wroth against his two officers, against the {role}, and against the {role2}.",
]

REFRAINS = [
    "And the evening and the morning were the day.",
    "And he called the name of that place {p1}.",
    "For his mercy endureth for ever.",
    "And the land had rest from war.",
]

# archaic orthography for the parallel book
ARCHAIC_WORDS = {
    "beginning": "bigynnyng",
    "heaven": "heuene",
    "earth": "erthe",
    "said": "seide",
    "called": "clepide",
    "builded": "bildide",
    "journeyed": "iourneyede",
    "created": "made of nouyt",
    "darkness": "derknessis",
    "shepherd": "scheepherde",
    "wisdom": "wisdom",
    "blessed": "blessid",
    "servants": "seruauntis",
    "great": "greet",
    "against": "ayens",
}


def archaize(text: str) -> str:
    def sub_word(match: re.Match) -> str:
        word = match.group(0)
        low = word.lower()
        if low in ARCHAIC_WORDS:
            replacement = ARCHAIC_WORDS[low]
            return replacement.capitalize() if word[0].isupper() else replacement
        return word

    out = re.sub(r"[A-Za-z]+", sub_word, text)
    out = out.replace("ing ", "yng ").replace("ing.", "yng.").replace("ing,", "yng,")
    out = out.replace("And it came to pass", "And it bifelde")
    return out


def make_chapter(rng: random.Random, book: str, chapter: int) -> str:
    verses = []
    if chapter == 1:
        verses.append(OPENINGS[rng.randrange(len(OPENINGS))])
    count = rng.randint(10, 14)
    for _ in range(count):
        template = TEMPLATES[rng.randrange(len(TEMPLATES))]
        n1, n2, n3 = rng.sample(NAMES, 3)
        p1, p2 = rng.sample(PLACES, 2)
        role, role2 = rng.sample(ROLES, 2)
        verses.append(
            template.format(
                n1=n1, n2=n2, n3=n3, p1=p1, p2=p2,
                role=role, role2=role2,
                thing=THINGS[rng.randrange(len(THINGS))],
                num=rng.choice(["seven", "twelve", "thirty", "forty", "threescore"]),
            )
        )
        if rng.random() < 0.2:
            verses.append(REFRAINS[rng.randrange(len(REFRAINS))].format(p1=p1))
    return "\n".join(f"{i} {verse}" for i, verse in enumerate(verses, start=1)) + "\n"


def main() -> None:
    rng = random.Random(66)
    if OUT.exists():
        shutil.rmtree(OUT)
    books = ["genesis", "exodus", "kings", "psalms", "proverbs"]
    chapters: dict[tuple[str, int], str] = {}
    for book in books:
        for chapter in range(1, 12):
            chapters[(book, chapter)] = make_chapter(rng, book, chapter)
    # wycliffe renders genesis in archaic orthography: parallel passages
    for chapter in range(1, 12):
        chapters[("wycliffe", chapter)] = archaize(chapters[("genesis", chapter)])
    for (book, chapter), text in sorted(chapters.items()):
        directory = OUT / book
        directory.mkdir(parents=True, exist_ok=True)
        (directory / f"ch{chapter:02d}.txt").write_text(text, encoding="utf-8")
        (directory / f"ch{chapter:02d}.meta.json").write_text(
            json.dumps({"title": f"{book.capitalize()} {chapter}", "book": book, "chapter": str(chapter)}, indent=0)
            + "\n",
            encoding="utf-8",
        )
    total = sum(len(t.encode()) for t in chapters.values())
    print(f"wrote {len(chapters)} documents, {total} bytes of text, to {OUT}")


if __name__ == "__main__":
    main()
