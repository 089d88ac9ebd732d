from pathlib import Path

PACKAGE_PATH = Path(__file__).parent

SPECS_PATH = PACKAGE_PATH / "specs"

PROPOSITIONS_PATH = SPECS_PATH / "propositions.toml"

CORPUS_PATH = SPECS_PATH / "corpus.toml"

DEFAULTS_PATH = SPECS_PATH / "defaults.toml"

GRAMMAR_PATH = SPECS_PATH / "lieword.lark"
