#!/usr/bin/env python3
"""Writes the bundled keyboard layouts under layouts/.

Keys use XKB names: TLDE, AE01-AE12 (digit row), AD01-AD12 (top letter row),
AC01-AC11 (home row), AB01-AB10 (bottom row) and BKSL.
"""
import json
import pathlib

ROWS = [("TLDE", 1), ("AE", 12), ("AD", 12), ("AC", 11), ("AB", 10), ("BKSL", 1)]


def key_ids():
    for prefix, n in ROWS:
        if n == 1:
            yield prefix
        else:
            for i in range(1, n + 1):
                yield f"{prefix}{i:02d}"


def layout(name, base, shift):
    ids = list(key_ids())
    assert len(base) == len(ids) and len(shift) == len(ids), name
    keys = []
    for key_id, b, s in zip(ids, base, shift):
        entry = {"key_id": key_id}
        if b:
            entry["base"] = b
        if s:
            entry["shift"] = s
        keys.append(entry)
    return {"name": name, "keys": keys}


US_BASE = list("`1234567890-=qwertyuiop[]asdfghjkl;'zxcvbnm,./\\")
US_SHIFT = list('~!@#$%^&*()_+QWERTYUIOP{}ASDFGHJKL:"ZXCVBNM<>?|')

RU_BASE = list("ё1234567890-=йцукенгшщзхъфывапролджэячсмитьбю.\\")
RU_SHIFT = list('Ё!"№;%:?*()_+ЙЦУКЕНГШЩЗХЪФЫВАПРОЛДЖЭЯЧСМИТЬБЮ,/')

GR_BASE = list("`1234567890-=;ςερτυθιοπ[]ασδφγηξκλ΄'ζχψωβνμ,./\\")
GR_SHIFT = list('~!@#$%^&*()_+:΅ΕΡΤΥΘΙΟΠ{}ΑΣΔΦΓΗΞΚΛ¨"ΖΧΨΩΒΝΜ<>?|')

# The lam-alef key produces two code points and is left without a base
# character; multi-character entries are not representable.
AR_BASE = list("ذ1234567890-=ضصثقفغعهخحجدشسيبلاتنمكطئءؤر") + [None] + list("ىةوزظ\\")
AR_SHIFT = (["ّ"] + list("!@#$%^&*()_+") + list("ًٌَُ") + [None] * 6 + ["<", ">"]
            + list("ٍِ][") + [None, "أ", "ـ", "،", "/", ":", '"']
            + list("~ْ}{") + [None, "آ", "'", ",", ".", "؟"] + ["|"])


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "layouts"
    out.mkdir(exist_ok=True)
    layouts = {
        "qwerty-us": layout("qwerty-us", US_BASE, US_SHIFT),
        "russian-jcuken": layout("russian-jcuken", RU_BASE, RU_SHIFT),
        "greek": layout("greek", GR_BASE, GR_SHIFT),
        "arabic": layout("arabic", AR_BASE, AR_SHIFT),
        # Setswana is typed on the US layout.
        "setswana": layout("setswana", US_BASE, US_SHIFT),
    }
    for name, data in layouts.items():
        for layer in ("base", "shift"):
            seen = [k[layer] for k in data["keys"] if layer in k]
            assert len(seen) == len(set(seen)), (name, layer)
        (out / f"{name}.json").write_text(json.dumps(data, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
