"""Public model set and UD treebank recipe behind the networked acceptance checks."""

MULTILINGUAL_MODEL = "bert-base-multilingual-cased"
MULTILINGUAL_VOCAB_SIZE = 119547

# language -> (hub model id, vocab size, % of that vocab also in the multilingual vocab)
MONOLINGUAL_MODELS = {
    "ar": ("aubmindlab/bert-base-arabertv01", 64000, 5.6),
    "en": ("bert-base-cased", 28996, 66.4),
    "fi": ("TurkuNLP/bert-base-finnish-cased-v1", 50105, 14.3),
    "id": ("indobenchmark/indobert-base-p2", 30521, 40.5),
    "ja": ("cl-tohoku/bert-base-japanese-char", 4000, 99.1),
    "ko": ("snunlp/KR-BERT-char16424", 16424, 47.4),
    "ru": ("DeepPavlov/rubert-base-cased", 119547, 21.1),
    "tr": ("dbmdz/bert-base-turkish-cased", 32000, 23.0),
    "zh": ("bert-base-chinese", 21128, 79.4),
}

UNCASED_LANGUAGES = {"id"}

# language -> (UD v2.6 treebank names, expected train+dev word count)
UD_TREEBANKS = {
    "ar": (("PADT",), 254192),
    "en": (("LinES", "EWT", "GUM", "ParTUT"), 449977),
    "fi": (("FTB", "TDT"), 324680),
    "id": (("GSD",), 110141),
    "ja": (("GSD",), 179571),
    "ko": (("GSD",), 390369),
    "ru": (("GSD", "SynTagRus", "Taiga"), 1130482),
    "tr": (("IMST",), 47830),
    "zh": (("GSD", "GSDSimp"), 222558),
}

UD_LANGUAGE_NAMES = {
    "ar": "Arabic",
    "en": "English",
    "fi": "Finnish",
    "id": "Indonesian",
    "ja": "Japanese",
    "ko": "Korean",
    "ru": "Russian",
    "tr": "Turkish",
    "zh": "Chinese",
}
