#!/usr/bin/env python3
"""Regenerates the synthetic Cyrillic fixture corpus used by the tests.

Each domain draws words from a shared Zipf-distributed core vocabulary plus a
domain-specific one, so type/token growth behaves like real text. Output is
fully determined by the fixed seed.
"""
import json
import os
import random

rng = random.Random(20200103)
ONSETS = "б в г д ж з к л м н п р с т х ц ч ш".split()
VOWELS = "а э и о у ө ү ы".split()
CODAS = ["", "", "н", "л", "р", "г", "д", "с", "х"]


def word():
    n = rng.choice([1, 2, 2, 3, 3, 4])
    return "".join(rng.choice(ONSETS) + rng.choice(VOWELS) + rng.choice(CODAS) for _ in range(n))


def vocab(n):
    seen, out = set(), []
    while len(out) < n:
        w = word()
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out


CORE = vocab(2500)
DOMAINS = [
    ("C1", "Newspaper-Culture", "written", 1200, 1.05, 5200),
    ("C2", "Newspaper-Sports", "written", 800, 1.10, 4800),
    ("C3", "Law", "written", 500, 1.20, 6100),
    ("C4", "Textbook-Literature", "written", 2200, 1.00, 4500),
    ("C5", "Podcast", "spoken", 700, 1.15, 5000),
]


def zipf_pick(words, s):
    weights = [1.0 / (r + 1) ** s for r in range(len(words))]
    return lambda: rng.choices(words, weights)[0]


def sentence(pick, law):
    n = rng.randint(4, 16)
    out = []
    for i in range(n):
        w = pick()
        if i == 0:
            w = w[0].upper() + w[1:]
        r = rng.random()
        if r < 0.03:
            w = str(rng.randint(1, 2020))
        elif r < 0.05:
            w = f"{rng.randint(1, 99)}-р"
        elif law and r < 0.07:
            w = f"{rng.randint(1, 9)}/{w}"
        elif r < 0.12 and i < n - 1:
            w += ","
        out.append(w)
    return " ".join(out) + rng.choice([".", ".", ".", "?", "!"])


def main():
    manifest = {"domains": []}
    for did, label, reg, own, s, tokens in DOMAINS:
        own_vocab = vocab(own)
        words = own_vocab[: own // 2] + CORE + own_vocab[own // 2 :]
        rng.shuffle(words)
        pick = zipf_pick(words, s)
        folder = did.lower()
        os.makedirs(folder, exist_ok=True)
        total, files, lines = 0, 0, []
        while total < tokens:
            sent = sentence(pick, did == "C3")
            total += len(sent.split())
            lines.append(sent)
        if did == "C3":
            lines.insert(0, "Гучин гуравдугаар зүйл. 1/Улсын Их Хурлын баталсан хууль, бусад "
                            "шийдвэрт бүхэлд нь буюу зарим хэсэгт нь хориг тавих.")
        chunk = (len(lines) + 2) // 3
        for f in range(3):
            part = lines[f * chunk:(f + 1) * chunk]
            with open(os.path.join(folder, f"part{f + 1}.txt"), "w", encoding="utf-8") as fh:
                # a few sentences per line, like paragraphs of extracted web text
                for i in range(0, len(part), 3):
                    fh.write(" ".join(part[i:i + 3]) + "\n")
            files += 1
        manifest["domains"].append(
            {"id": did, "label": label, "register": reg, "paths": [f"{folder}/*.txt"], "encoding": "UTF-8"})
    with open("manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, ensure_ascii=False, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
