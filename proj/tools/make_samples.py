#!/usr/bin/env python3
"""Regenerates the sample manuscripts and images under samples/.

The texts are synthetic: sentences are drawn from a fixed vocabulary with a
seeded generator, so the word count and structure are exact and the files are
free of third-party copyright.
"""

import random
import struct
import zlib
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "samples"

PT_WORDS = """
a o as os um uma uns umas de do da dos das em no na nós nas por pelo pela para
com sem sob sobre entre até desde que se como quando onde porque mas nem ou
e também ainda sempre nunca logo depois antes agora então assim muito pouco
mais menos tanto todo toda todos todas outro outra outros cada mesmo mesma
ele ela eles elas eu tu nós vocês lhe lhes me te seu sua seus suas meu minha
era foi estava tinha havia disse ficou parecia olhava sentia sabia queria podia
viu veio deu fez pediu chamou trouxe levou correu subiu desceu entrou saiu
pensou lembrou esperou sorriu chorou gritou murmurou respondeu perguntou
casa rua cidade aldeia campo rio mar serra monte estrada janela porta sala
quarto jardim igreja convento moinho castelo palácio loja mesa cadeira livro
carta papel tinta vela lume noite dia manhã tarde sol lua estrela chuva vento
homem mulher rapaz rapariga senhor senhora padre frade criado rei rainha
amigo amiga filho filha pai mãe irmão irmã tio tia velho velha menino menina
olhos maos rosto cabelo voz alma coração silêncio sombra luz ouro prata
vinho pão água flor árvore folha pedra terra caminho ponte praça mercado
bonito bonita triste alegre grande pequeno pequena escuro claro antigo antiga
branco branca negro negra loiro loura doce amargo quente frio lento rápido
profundo longo longa calmo sereno inquieto pobre rico nobre simples estranho
singularidade tranquilidade melancolia esperança paciência curiosidade
extraordinário extraordinária inesperadamente silenciosamente lentamente
imediatamente naturalmente vagamente profundamente absolutamente
conversação civilização inteligência imaginação generosidade felicidade
contemplação recordação desesperado envergonhado apaixonado adormecido
""".split()

EN_WORDS = """
the a an of to in on at by for with from into over under between through
and but or nor so yet because although while when where after before since
he she they we it his her their our its this that these those every each
was were had has could would should might said thought looked walked turned
opened closed carried found kept held wrote read answered wondered waited
garden house street river window door table letter evening morning summer
winter light shadow stone water tree leaf flower path hill valley bridge
village market harbour lantern candle paper ink book chapter voice silence
old young quiet bright dark gentle heavy narrow distant familiar patient
small large early late slowly quietly suddenly carefully almost always never
typography hyphenation composition proportion arrangement measurement
extraordinary understanding imagination remembering conversation
particularly unexpectedly considerable comfortable independent
neighbourhood handwriting manuscript paragraph punctuation illustration
""".split()

CONTOS_CHAPTERS = [
    "Singularidades de uma rapariga loura",
    "Um poeta lírico",
    "No moinho",
    "Civilização",
    "O tesouro",
    "Frei Genebro",
    "Adão e Eva no Paraíso",
    "A aia",
    "O defunto",
    "José Matias",
    "A perfeição",
    "O suave milagre",
    "Um dia de chuva",
]


def sentence(rng, words, lo=6, hi=22):
    n = rng.randint(lo, hi)
    toks = [rng.choice(words) for _ in range(n)]
    if n > 9 and rng.random() < 0.5:
        k = rng.randint(3, n - 3)
        toks[k] += ","
    if rng.random() < 0.08:
        k = rng.randrange(n)
        toks[k] = "*" + toks[k] + "*"
    toks[0] = toks[0][0].upper() + toks[0][1:]
    end = rng.choice([".", ".", ".", ".", "!", "?"])
    toks[-1] += end
    return toks


def paragraph(rng, words, dialogue=False):
    toks = []
    if dialogue:
        toks.append("—")
        toks += sentence(rng, words, 4, 14)
        return toks
    for _ in range(rng.randint(2, 8)):
        toks += sentence(rng, words)
    return toks


def contos(target=73330):
    rng = random.Random(31347)
    out = ["title: Contos de ensaio", "author: Folio", "language: pt", ""]
    heading_words = sum(len(c.split()) for c in CONTOS_CHAPTERS)
    budget = target - heading_words
    per_chapter = budget // len(CONTOS_CHAPTERS)
    remaining = budget
    for i, title in enumerate(CONTOS_CHAPTERS):
        out.append("# " + title)
        out.append("")
        quota = per_chapter if i < len(CONTOS_CHAPTERS) - 1 else remaining
        used = 0
        while used < quota:
            p = paragraph(rng, PT_WORDS, dialogue=rng.random() < 0.2)
            if used + len(p) > quota:
                p = p[: quota - used]
                if p[-1][-1] not in ".!?":
                    p[-1] += "."
            used += len(p)
            out.append(" ".join(p))
            out.append("")
        remaining -= used
    return "\n".join(out)


def garden():
    rng = random.Random(7)
    out = ["title: The Garden Notebook", "author: A. Gardener", "language: en", ""]
    plan = [
        ("# Spring", ["garden-path"]),
        ("## Sowing", []),
        ("### Early beds", ["old_oak"]),
        ("# Summer", ["river-view"]),
        ("## Watering", []),
        ("# Autumn", []),
    ]
    for heading, images in plan:
        out.append(heading)
        out.append("")
        for k in range(5):
            out.append(" ".join(paragraph(rng, EN_WORDS)))
            out.append("")
            if k == 1 and images:
                for name in images:
                    out.append("@%s@" % name)
                    out.append("")
    return "\n".join(out)


def png(path, w, h, rgb):
    raw = b"".join(b"\x00" + bytes(rgb) * w for _ in range(h))

    def chunk(tag, data):
        c = struct.pack(">I", len(data)) + tag + data
        return c + struct.pack(">I", zlib.crc32(tag + data) & 0xFFFFFFFF)

    data = b"\x89PNG\r\n\x1a\n"
    data += chunk(b"IHDR", struct.pack(">IIBBBBB", w, h, 8, 2, 0, 0, 0))
    data += chunk(b"IDAT", zlib.compress(raw, 9))
    data += chunk(b"IEND", b"")
    path.write_bytes(data)


def main():
    ROOT.mkdir(exist_ok=True)
    (ROOT / "images").mkdir(exist_ok=True)
    (ROOT / "contos.md").write_text(contos() + "\n", encoding="utf-8")
    (ROOT / "garden.md").write_text(garden() + "\n", encoding="utf-8")
    png(ROOT / "images" / "garden-path.png", 800, 600, (120, 160, 90))
    png(ROOT / "images" / "old_oak.png", 600, 900, (90, 110, 70))
    png(ROOT / "images" / "river-view.png", 1200, 500, (80, 130, 190))


if __name__ == "__main__":
    main()
