from .fixtures import GROUPS, FixtureCatalog, catalog, load_fixture, normalize_name
