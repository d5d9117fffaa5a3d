import pytest

from opweno.errors import ConfigurationError
from opweno.mappings import MipAcmk, MopAcmk, WenoIm
from opweno.runconfig import RunConfig, format_config, parse_config


def test_parse_full_example():
    cfg = parse_config("scheme=mop-acmk cfs0=0.01 cfs1=0.94 k0=0 k1=0 "
                       "problem=slp N=800 cfl=0.1 t_end=2000")
    assert cfg.problem == "slp"
    assert cfg.scheme == MopAcmk(cfs0=0.01, cfs1=0.94, k0=0.0, k1=0.0)
    assert cfg.resolutions == (800,)
    assert cfg.cfl == 0.1 and cfg.dt_mode == "fixed-cfl"
    assert cfg.t_end == 2000.0


def test_parse_im_scheme():
    cfg = parse_config("problem=sine scheme=im k=2 A=0.1")
    assert cfg.scheme == WenoIm(2, 0.1)


def test_parse_rejects_out_of_range():
    with pytest.raises(ConfigurationError, match="cfs0"):
        parse_config("problem=slp scheme=mop-acmk cfs0=0.5")


def test_parse_rejects_unknown_and_duplicates():
    with pytest.raises(ConfigurationError, match="unknown configuration key"):
        parse_config("problem=slp wibble=1")
    with pytest.raises(ConfigurationError, match="duplicate"):
        parse_config("problem=slp problem=sine")
    with pytest.raises(ConfigurationError, match="unknown scheme"):
        parse_config("problem=slp scheme=upwind")
    with pytest.raises(ConfigurationError, match="unknown problem"):
        parse_config("problem=sod")


def test_parse_comments_newlines_and_accuracy_cfl():
    cfg = parse_config("""
    # convergence study
    problem=sine
    scheme=js
    N=10,20,40
    cfl=accuracy
    eps=1e-40
    """)
    assert cfg.dt_mode == "accuracy-cfl"
    assert cfg.resolutions == (10, 20, 40)
    assert cfg.eps == 1e-40


def test_parse_preset_with_overrides():
    cfg = parse_config("preset=accuracy-sine schemes=js,m,mop-acmk N=40,80")
    assert cfg.problem == "sine"
    assert cfg.resolutions == (40, 80)
    assert cfg.dt_mode == "accuracy-cfl"
    assert cfg.eps == 1e-40
    assert [s for s, _ in cfg.sweep_schemes()] == ["js", "m", "mop-acmk"]


def test_parse_mip_triples():
    cfg = parse_config("problem=slp scheme=mip-acmk cfs=0.01,0.06,0.03 kslope=0,0,0")
    assert cfg.scheme == MipAcmk()


def test_scan_rejected_on_2d():
    with pytest.raises(ConfigurationError):
        parse_config("problem=riemann2d-c4 scheme=js nonop_scan=true")


def test_round_trip_canonical_form():
    texts = [
        "scheme=mop-acmk cfs0=0.02 cfs1=0.9 k0=1.5 k1=2.0 problem=slp N=100 "
        "cfl=0.4 t_end=2 nonop_scan=true outdir=out",
        "problem=sine scheme=im k=4 A=0.7 N=10,20 cfl=accuracy t_end=2",
        "preset=bicwp-long-desk scheme=mip-acmk overshoot=true",
    ]
    for text in texts:
        cfg = parse_config(text)
        canon = format_config(cfg)
        assert parse_config(canon) == cfg
        assert format_config(parse_config(canon)) == canon


def test_parse_rejects_nonpositive_eps():
    with pytest.raises(ConfigurationError, match="eps"):
        parse_config("problem=sine scheme=js eps=0")
    with pytest.raises(ConfigurationError, match="eps"):
        parse_config("problem=sine scheme=js eps=-1e-6")
