from dataclasses import dataclass


@dataclass(frozen=True)
class Settings:
    """
    Tunable limits for group computations, searches and outputs.

    Attributes:
        degree_budget (int): Largest permutation degree a stabilizer chain is built for.
        search_budget (int): Largest number of candidate tuples a witness search visits.
        p_part_samples (int): Number of random elements sampled by p_part_subgroup.
        seed (int): Seed for every pseudo-random choice; recorded in certificates.
        output_directory (str): Default directory for CSV exports.
        workers (int): Number of worker processes for witness searches.
    """

    degree_budget: int = 64
    search_budget: int = 2_000_000
    p_part_samples: int = 64
    seed: int = 1729
    output_directory: str = "certificates"
    workers: int = 1


DEFAULT_SETTINGS = Settings()
