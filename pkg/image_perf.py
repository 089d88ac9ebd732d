import argparse
import time

from lieimage import census, engine, logger
from lieimage.enums import PropositionId, Strategy
from lieimage.gf import field_from_order
from lieimage.lieword import WordCorpus, build_engel_diff

Q_LIST = (3, 5, 7, 9, 11, 13)


def time_nilpotent_images(jobs: int) -> float:
    """
    Reduced images of ad^2 - ad^(2q) over the whole q list.

    :param jobs: Worker processes.
    :type jobs: int
    :return: Wall time in seconds.
    :rtype: float
    """
    start = time.perf_counter()
    for q in Q_LIST:
        field = field_from_order(q)
        engine.compute_image(
            build_engel_diff(2, 2 * q), field, Strategy.reduced, jobs=jobs
        )
    return time.perf_counter() - start


def time_missed_orbits(jobs: int, q: int = 23) -> float:
    start = time.perf_counter()
    report = census.verify(
        PropositionId.missed_orbits, field_from_order(q), jobs=jobs
    )
    elapsed = time.perf_counter() - start
    if not report.passed:
        logger.warning(report.text())
    return elapsed


def time_strategy_equivalence(jobs: int) -> float:
    start = time.perf_counter()
    for word in WordCorpus().equivalence_words():
        for q in (3, 5):
            field = field_from_order(q)
            brute = engine.image_bruteforce(word, field, jobs=jobs)
            reduced = engine.image_reduced(word, field, jobs=jobs)
            if brute != reduced:
                logger.warning(f"Strategies disagree on {word} over {field}")
    return time.perf_counter() - start


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    logger.configure_logger(level="WARNING")
    try:
        print(f"nilpotent images: {time_nilpotent_images(args.jobs):.3f}s")
        print(f"missed orbits q=23: {time_missed_orbits(args.jobs):.3f}s")
        print(
            "strategy equivalence: "
            f"{time_strategy_equivalence(args.jobs):.3f}s"
        )
    finally:
        engine.shutdown_pool()
