import subprocess

import pytest

# small-but-valid simulator runs, one per figure recipe
_COMMANDS = {
    "fig3": ["--trials", "100", "--alpha", "0.1,1", "--rho-d-db", "0,10"],
    "fig4": ["--trials", "100", "--k", "2,4", "--alpha", "1"],
    "fig5": ["--trials", "100", "--alpha", "0.1,1"],
    "fig6": ["--trials", "100", "--alpha", "0.01,1", "--btot", "4"],
    "fig7": ["--trials", "100", "--alpha", "1", "--btot", "4,6"],
    "fig8": ["--btot", "8"],
    "fig9": ["--trials", "100", "--k", "8", "--btot", "4"],
}


@pytest.fixture(scope="session")
def sample_csvs(tmp_path_factory):
    """Generate one CSV per figure by invoking the simulator CLI."""
    outdir = tmp_path_factory.mktemp("csv")
    paths = {}
    for fig, extra in _COMMANDS.items():
        path = outdir / ("%s.csv" % fig)
        subprocess.run(["simulate", fig, "--seed", "3", "--out", str(path)]
                       + extra, check=True)
        paths[fig] = path
    return paths
