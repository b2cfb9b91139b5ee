from functools import lru_cache

from hypothesis import settings

from rootgroupoid import catalog
from rootgroupoid.rootdatum import base_vertex
from rootgroupoid.skeleton import ExplorationLimits, explore_skeleton, explore_spine

settings.register_profile("repo", deadline=None, max_examples=100)
settings.load_profile("repo")

SMALL = ExplorationLimits(max_vertices=300)


@lru_cache(maxsize=None)
def vertex(name):
    return base_vertex(catalog.get(name).datum)


@lru_cache(maxsize=None)
def skeleton(name, max_vertices=300):
    return explore_skeleton(vertex(name), ExplorationLimits(max_vertices=max_vertices))


@lru_cache(maxsize=None)
def spine(name, max_vertices=300):
    return explore_spine(vertex(name), ExplorationLimits(max_vertices=max_vertices))


def complete_catalog_names():
    return [n for n in catalog.list() if skeleton(n).complete]
