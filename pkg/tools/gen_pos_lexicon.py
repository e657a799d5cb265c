#!/usr/bin/env python3
"""Build the part-of-speech lexicon used by the rule-based noun chunker.

Closed-class words and common policy verbs/adjectives are listed; verb
inflections are generated. Words not in the lexicon default to NOUN at
tagging time, so the noun list only pins down words that would otherwise
be mis-tagged. Output: src/cppgen/data/pos_lexicon.json.

Dual-use words that are also taxonomy keywords (name, share, account, ...)
are deliberately left to the NOUN default: sentences containing them are
settled by the keyword stage and never reach the chunker.
"""

import json
from pathlib import Path

DET = ["the", "a", "an", "this", "that", "these", "those", "each", "every",
       "some", "any", "all", "both", "no", "another", "either", "neither", "such"]

POSS = ["your", "our", "my", "their", "his", "her", "its", "whose"]

PRON = ["we", "you", "i", "they", "it", "he", "she", "us", "them", "me", "him",
        "who", "whom", "which", "what", "yourself", "ourselves", "themselves",
        "anyone", "everyone", "someone", "nothing", "anything", "everything"]

PREP = ["of", "in", "on", "at", "by", "for", "with", "from", "to", "about",
        "as", "into", "through", "during", "before", "after", "above", "below",
        "between", "under", "over", "within", "without", "via", "per",
        "against", "among", "upon", "across", "behind", "beyond", "regarding",
        "concerning", "including", "until", "unto"]

CONJ = ["and", "or", "but", "nor", "so", "yet", "if", "because", "while",
        "when", "where", "than", "although", "though", "unless", "whether",
        "however", "therefore", "whereas", "once"]

AUX = ["is", "are", "was", "were", "be", "been", "being", "am", "do", "does",
       "did", "done", "have", "has", "had", "having", "will", "would", "can",
       "could", "may", "might", "must", "shall", "should", "ought", "cannot"]

ADV = ["not", "also", "only", "never", "always", "often", "sometimes",
       "usually", "automatically", "directly", "securely", "safely", "please",
       "here", "there", "now", "then", "very", "more", "most", "less", "least",
       "too", "together", "alone", "again", "already", "still", "just", "even",
       "instead", "otherwise", "elsewhere", "online", "offline", "anytime"]

ADJ = ["personal", "private", "precise", "approximate", "current", "geographic",
       "technical", "financial", "new", "certain", "other", "various",
       "additional", "specific", "general", "public", "full", "first", "last",
       "third", "necessary", "relevant", "important", "sensitive", "anonymous",
       "aggregated", "safe", "secure", "limited", "legal", "applicable",
       "following", "above-mentioned", "unique", "own", "same", "different",
       "appropriate", "reasonable"]

# Bases for generated inflections. Keyword words (share, call, scan, talk,
# pay, ...) are excluded on purpose; see module docstring.
VERB_BASES = [
    "collect", "use", "access", "store", "process", "disclose", "obtain",
    "receive", "transfer", "provide", "gather", "keep", "send", "sell",
    "delete", "protect", "track", "record", "request", "require", "submit",
    "upload", "download", "update", "manage", "review", "visit", "grant",
    "allow", "enable", "improve", "include", "identify", "notify", "create",
    "retain", "remove", "combine", "analyze", "measure", "link", "associate",
    "limit", "agree", "apply", "become", "browse", "change", "choose",
    "click", "communicate", "connect", "control", "correct", "customize",
    "deliver", "describe", "detect", "determine", "develop", "enter",
    "exercise", "expect", "explain", "fill", "find", "follow", "help",
    "hold", "inform", "install", "integrate", "interact", "learn", "let",
    "maintain", "make", "mean", "monitor", "need", "offer", "operate",
    "perform", "permit", "personalize", "prevent", "read", "register",
    "remain", "respond", "restrict", "save", "secure", "see", "serve",
    "set", "sign", "stay", "stop", "support", "tailor", "tell", "transmit",
    "understand", "verify", "want", "wish", "work", "write", "ask", "take",
]

IRREGULAR = {
    "keep": ["kept"],
    "send": ["sent"],
    "sell": ["sold"],
    "make": ["made"],
    "hold": ["held"],
    "find": ["found"],
    "tell": ["told"],
    "see": ["saw", "seen"],
    "become": ["became"],
    "choose": ["chose", "chosen"],
    "let": ["let"],
    "read": ["read"],
    "set": ["set"],
    "write": ["wrote", "written"],
    "mean": ["meant"],
    "understand": ["understood"],
    "take": ["took", "taken"],
}

DOUBLED = {"transfer", "submit", "stop", "permit"}


def inflections(base: str) -> list[str]:
    forms = {base}
    if base.endswith(("s", "x", "z", "ch", "sh")):
        forms.add(base + "es")
    else:
        forms.add(base + "s")
    if base in DOUBLED:
        stem = base + base[-1]
        forms.update({stem + "ed", stem + "ing"})
    elif base.endswith("e"):
        forms.update({base + "d", base[:-1] + "ing"})
    elif base.endswith("y") and base[-2] not in "aeiou":
        forms.update({base[:-1] + "ied", base + "ing"})
    else:
        forms.update({base + "ed", base + "ing"})
    forms.update(IRREGULAR.get(base, []))
    return sorted(forms)


def main():
    out = Path(__file__).resolve().parent.parent / "src" / "cppgen" / "data" / "pos_lexicon.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    verbs = sorted({form for base in VERB_BASES for form in inflections(base)})
    lexicon = {
        "det": sorted(DET),
        "poss": sorted(POSS),
        "pron": sorted(PRON),
        "prep": sorted(PREP),
        "conj": sorted(CONJ),
        "aux": sorted(AUX),
        "adv": sorted(ADV),
        "verb": verbs,
        "adj": sorted(ADJ),
    }
    out.write_text(json.dumps(lexicon, indent=1), encoding="utf-8")
    print(f"wrote lexicon ({sum(len(v) for v in lexicon.values())} words) -> {out}")


if __name__ == "__main__":
    main()
