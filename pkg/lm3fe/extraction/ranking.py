#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Use a fitted extractor as a feature selector (row norm ranking) or as a
feature transformer (weighted projection).
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from lm3fe.common import EmptySelectionError, ShapeError
from lm3fe.data.models import MultiModalDataset


@dataclass(frozen=True, eq=False)
class FeatureRanking:
    """Per modality, feature indices by descending score (ties by index)
    and the scores in that same order."""

    orders: tuple
    scores: tuple

    @property
    def n_modalities(self):
        return len(self.orders)

    def rows(self):
        """(modality, rank, feature_index, score) tuples, ranks from 1."""
        for v, (order, scores) in enumerate(zip(self.orders, self.scores)):
            for rank, (index, score) in enumerate(zip(order, scores), start=1):
                yield v, rank, int(index), float(score)


def ranking_from_scores(scores):
    """Rank every modality of a list of per-feature score vectors."""
    orders, sorted_scores = [], []
    for values in scores:
        values = np.asarray(values, dtype=float)
        # Stable sort keeps ascending original index among equal scores.
        order = np.argsort(-values, kind='stable')
        orders.append(order)
        sorted_scores.append(values[order])
    return FeatureRanking(tuple(orders), tuple(sorted_scores))


def ranking_from_matrix(U, dims):
    """Split the rows of a concatenated matrix by modality and rank them
    by Euclidean norm. Rows past sum(dims) (a bias row) are ignored."""
    norms = np.sqrt(np.sum(np.asarray(U) ** 2, axis=1))
    bounds = np.cumsum([0] + list(dims))
    return ranking_from_scores([norms[a:b] for a, b in zip(bounds, bounds[1:])])


def rank_features(model):
    return ranking_from_scores([np.sqrt(np.sum(u * u, axis=1)) for u in model.extraction])


def selection_count(fraction, dim):
    """ceil(fraction * dim), immune to float noise such as 0.3 * 10."""
    if not 0 < fraction <= 1:
        raise EmptySelectionError('Selection fractions must lie in (0, 1].')
    return int(math.ceil(round(fraction * dim, 9)))


def selected_indices(ranking, fractions):
    """Kept feature indices per modality (in rank order)."""
    if len(fractions) == 1:
        fractions = list(fractions) * ranking.n_modalities
    if len(fractions) != ranking.n_modalities:
        raise ShapeError('Need one fraction per modality (or one for all).')
    return [
        order[:selection_count(r, len(order))]
        for r, order in zip(fractions, ranking.orders)
    ]


def selected_matrix(data, ranking, fractions):
    """Stacked rows of the top-ranked features of every modality."""
    if ranking.n_modalities != data.n_modalities:
        raise ShapeError('Ranking and dataset disagree on the modalities.')
    kept = selected_indices(ranking, fractions)
    if sum(len(indices) for indices in kept) == 0:
        raise EmptySelectionError('Selection keeps no feature.')
    return np.vstack([x[indices] for x, indices in zip(data.modalities, kept)])


def select_features(data, ranking, fractions):
    """Concatenate the top-ranked features of every modality into a single
    modality dataset."""
    return MultiModalDataset.create([selected_matrix(data, ranking, fractions)], data.labels)


def selection_precision(ranking, planted, k=None):
    """Mean over modalities of precision@k of the ranking against the
    planted informative sets (k defaults to the planted set size)."""
    precisions = []
    for order, truth in zip(ranking.orders, planted):
        size = len(truth) if k is None else k
        if size == 0:
            continue
        hits = len(set(order[:size].tolist()) & set(np.asarray(truth).tolist()))
        precisions.append(hits / float(size))
    return float(np.mean(precisions)) if precisions else 0.0


def transform_features(data, model):
    """N x m matrix of projected features sum_v theta_v U_v^T x_n."""
    model.check_compatible(data)
    latent = np.zeros((model.latent_dim, data.n_samples))
    for theta, u, x in zip(model.weights, model.extraction, data.modalities):
        latent += theta * u.T.dot(x)
    return latent.T


def write_ranking_csv(path, ranking):
    with open(path, 'w', newline='', encoding='utf-8') as target:
        writer = csv.writer(target)
        writer.writerow(['modality', 'rank', 'feature_index', 'score'])
        for row in ranking.rows():
            writer.writerow([row[0], row[1], row[2], repr(row[3])])
