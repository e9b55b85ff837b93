"""Exact expansions of real numbers in Cantor real bases and alternate bases."""
from .admissibility import (
    LanguageHandle, in_D, in_factor_language, in_pref_D, in_S, is_greedy_expansion, parry2_check,
    x_set, y_set,
)
from .automaton import (
    ShiftAutomaton, Sofic, Undetermined, accepts_factor, build_automaton, export, forbidden_factors,
    from_json, sofic_verdict, trim_accessible,
)
from .bases import StreamBase, UPBase, format_base, parse_base, thue_morse_base
from .errors import *  # noqa: F401,F403
from .exact import PHI, ExactReal, compare, format_number, parse_number
from .expansion import (
    QuasiGreedyTable, Unknown, expansion_of, greedy_digits, quasi_greedy_table, t_step, val, val_prefix,
)
from .solver import (
    ConstructedBase, Enclosure, construct_alternate_base, construct_cantor_base, solve_single_base,
)
from .words import UPWord, format_word, format_word_pretty, lex_compare, parse_word

__version__ = "0.1.0"
