#  Copyright (c) torichow authors 2026-10-18.

from contextlib import contextmanager

from .types import Config

CONFIG = Config(
    monomial_limit=200000,
    zero_degree_cap=None,
    seed=0,
    check_lemma_cone=True,
)


def torichow_config(
    monomial_limit: int = None,
    zero_degree_cap: int = None,
    seed: int = None,
    check_lemma_cone: bool = None,
):
    args = {k: v for k, v in locals().items() if v is not None}
    CONFIG.update(args)


def torichow_get_config() -> Config:
    return CONFIG


@contextmanager
def torichow_override(**kwargs):
    saved = dict(CONFIG)
    CONFIG.update({k: v for k, v in kwargs.items() if v is not None})
    try:
        yield CONFIG
    finally:
        CONFIG.clear()
        CONFIG.update(saved)
