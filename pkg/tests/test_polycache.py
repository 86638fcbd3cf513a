import pytest

from primdiv import cyclotomic, polycache
from primdiv.polycache import CacheEntry, PolyCache


def test_render_parse_roundtrip():
    entry = polycache.build_entry(105)
    back = polycache.parse(polycache.render(entry))
    assert back == entry
    assert back.gprime == cyclotomic.g_poly(105).derivative()


def test_small_n_have_no_g():
    e = polycache.build_entry(2)
    assert e.g is None and e.gprime is None
    assert polycache.parse(polycache.render(e)) == e


def test_store_load_and_corruption(tmp_path, caplog):
    cache = PolyCache(tmp_path)
    assert cache.load(35) is None
    cache.store(polycache.build_entry(35))
    assert cache.load(35) == polycache.build_entry(35)
    path = cache.path(35)
    text = path.read_text().replace("phi 1 ", "phi 2 ", 1)
    path.write_text(text)
    assert cache.load(35) is None
    assert "checksum" in caplog.text
    assert cache.build([35]) == [35]
    assert cache.load(35) == polycache.build_entry(35)


def test_inconsistent_derivative_is_rejected(tmp_path):
    cache = PolyCache(tmp_path)
    good = polycache.build_entry(12)
    bad = CacheEntry(12, good.phi, good.g, good.g)
    cache.store(bad)
    assert cache.load(12) is None
    assert cache.get(12) == good


def test_version_and_shape_checks():
    with pytest.raises(ValueError):
        polycache.parse("primdiv-polycache 1\n")
    text = polycache.render(polycache.build_entry(7)).replace("primdiv-polycache 1", "primdiv-polycache 9")
    with pytest.raises(ValueError):
        polycache.parse(text)


def test_warm_seeds_memory(tmp_path):
    cache = PolyCache(tmp_path)
    cache.build(range(1, 50))
    cyclotomic.clear_cache()
    assert cache.warm(range(1, 60)) == 49
    assert 48 in cyclotomic.cached_entries()
    assert cyclotomic.g_poly(48) == polycache.build_entry(48).g


def test_env_overrides_flag(monkeypatch, tmp_path):
    monkeypatch.setenv(polycache.ENV_VAR, str(tmp_path / "env"))
    assert polycache.resolve_dir("/elsewhere") == tmp_path / "env"
    monkeypatch.delenv(polycache.ENV_VAR)
    assert str(polycache.resolve_dir("/elsewhere")) == "/elsewhere"
    assert polycache.resolve_dir(None) is None
