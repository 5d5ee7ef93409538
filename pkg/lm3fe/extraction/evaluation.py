#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Downstream evaluation: 1-NN classification, accuracy, macro-F1 and mean
average precision, plus the split protocols.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist
from sklearn.metrics import accuracy_score, f1_score, average_precision_score
from sklearn.model_selection import train_test_split

from lm3fe.common import LOG, ShapeError
from lm3fe.solver.hinge import decision_scores
from .ranking import selected_matrix, transform_features


@dataclass
class EvalReport:
    """Metrics of one evaluation. Metrics that a protocol does not produce
    stay None; the others lie in [0, 1]."""

    accuracy: float = None
    macro_f1: float = None
    per_class_f1: list = field(default_factory=list)
    mean_average_precision: float = None
    per_label_ap: list = field(default_factory=list)
    n_train: int = 0
    n_test: int = 0

    def jsondict(self):
        """Return a JSON-serializable dictionary representing the report"""
        return {
            "accuracy": self.accuracy,
            "macro_f1": self.macro_f1,
            "per_class_f1": list(self.per_class_f1),
            "mean_average_precision": self.mean_average_precision,
            "per_label_ap": list(self.per_label_ap),
            "n_train": self.n_train,
            "n_test": self.n_test,
        }


def knn_classify(train_features, train_labels, test_features, k=1):
    """Euclidean k-NN with majority vote. Distance ties go to the lower
    train index, vote ties to the label of the closest tied neighbour.
    Features are given one sample per row."""
    train_features = np.atleast_2d(train_features)
    train_labels = np.asarray(train_labels)
    test_features = np.atleast_2d(test_features)
    if train_features.shape[0] == 0:
        raise ValueError('Cannot classify with an empty training set.')
    if train_features.shape[0] != train_labels.shape[0]:
        raise ShapeError('One label per training sample is required.')

    distances = cdist(test_features, train_features)
    if k == 1:
        return train_labels[np.argmin(distances, axis=1)]

    neighbours = np.argsort(distances, axis=1, kind='stable')[:, :k]
    predictions = []
    for row in train_labels[neighbours]:
        values, counts = np.unique(row, return_counts=True)
        winners = set(values[counts == counts.max()].tolist())
        predictions.append(next(label for label in row if label in winners))
    return np.array(predictions)


def compute_metrics(truth, predictions=None, scores=None, n_classes=None):
    """Accuracy and F1 scores from class predictions and/or average
    precision from per-label scores.

    `truth` is a class index vector when `predictions` is given, and an
    N x P sign (or 0/1) matrix when `scores` (N x P) is given. Pass both
    as keyword arguments to get both kinds of metrics from one call."""
    report = EvalReport()
    if predictions is not None:
        classes = np.asarray(truth)
        predictions = np.asarray(predictions)
        if classes.shape != predictions.shape:
            raise ShapeError('Predictions and truth have different lengths.')
        if n_classes is None:
            n_classes = int(max(classes.max(initial=-1), predictions.max(initial=-1))) + 1
        labels = list(range(n_classes))
        if not set(np.unique(classes)) <= set(labels) or not set(np.unique(predictions)) <= set(labels):
            raise ShapeError('Label sets of predictions and truth do not match.')
        per_class = f1_score(classes, predictions, labels=labels, average=None, zero_division=0)
        report.accuracy = float(accuracy_score(classes, predictions))
        report.per_class_f1 = [float(value) for value in per_class]
        report.macro_f1 = float(np.mean(per_class)) if len(per_class) else 0.0
        report.n_test = int(classes.shape[0])

    if scores is not None:
        relevant = np.atleast_2d(truth) > 0
        scores = np.atleast_2d(scores)
        if relevant.shape != scores.shape:
            raise ShapeError('Scores and truth have different shapes.')
        per_label = [
            float(average_precision_score(relevant[:, p], scores[:, p]))
            for p in range(scores.shape[1]) if relevant[:, p].any()
        ]
        report.per_label_ap = per_label
        report.mean_average_precision = float(np.mean(per_label)) if per_label else 0.0
        report.n_test = int(scores.shape[0])
    return report


def split_dataset(data, test_fraction=0.3, seed=0):
    """Random train/test split, stratified when the data is single-label."""
    indices = np.arange(data.n_samples)
    try:
        stratify = data.class_indices()
    except ValueError:
        stratify = None
    train, test = train_test_split(
        indices, test_size=test_fraction, random_state=seed, stratify=stratify
    )
    return data.subset(np.sort(train)), data.subset(np.sort(test))


def labeled_subset(data, per_class, seed=0):
    """Training subset with `per_class` labelled samples of every class,
    the rest of the data as test set."""
    rng = np.random.default_rng(seed)
    classes = data.class_indices()
    chosen = []
    for c in range(data.n_tasks):
        members = np.flatnonzero(classes == c)
        take = min(per_class, members.size)
        chosen.extend(rng.choice(members, size=take, replace=False).tolist())
    chosen = np.sort(np.array(chosen, dtype=int))
    rest = np.setdiff1d(np.arange(data.n_samples), chosen)
    return data.subset(chosen), data.subset(rest)


def _nearest_neighbour_report(train_features, train, test_features, test):
    predictions = knn_classify(train_features, train.class_indices(), test_features)
    report = compute_metrics(test.class_indices(), predictions=predictions, n_classes=train.n_tasks)
    report.n_train = train.n_samples
    return report


def evaluate_concatenation(train, test):
    """1-NN on all features concatenated."""
    return _nearest_neighbour_report(
        train.concatenated().T, train, test.concatenated().T, test
    )


def evaluate_modality(train, test, v):
    """1-NN on the features of modality v alone."""
    return _nearest_neighbour_report(
        train.modalities[v].T, train, test.modalities[v].T, test
    )


def evaluate_features(train_features, train, test_features, test):
    """1-NN on precomputed N x k feature matrices."""
    return _nearest_neighbour_report(train_features, train, test_features, test)


def evaluate_selection(train, test, ranking, fractions):
    """1-NN on the top-ranked features of every modality."""
    return _nearest_neighbour_report(
        selected_matrix(train, ranking, fractions).T, train,
        selected_matrix(test, ranking, fractions).T, test
    )


def evaluate_transformation(train, test, model):
    """1-NN on the projected latent features."""
    return _nearest_neighbour_report(
        transform_features(train, model), train, transform_features(test, model), test
    )


def evaluate_ranking_map(test, model):
    """Mean average precision of the linear scores of every task."""
    report = compute_metrics(test.labels, scores=decision_scores(model, test).T)
    return report


def repeat_evaluation(protocol, seeds):
    """Run `protocol(seed) -> EvalReport` for every seed and return
    {metric: (mean, std)} over the metrics every run produced."""
    reports = [protocol(seed) for seed in seeds]
    summary = {}
    for name in ('accuracy', 'macro_f1', 'mean_average_precision'):
        values = [getattr(report, name) for report in reports]
        if values and all(value is not None for value in values):
            summary[name] = (float(np.mean(values)), float(np.std(values)))
    LOG.info('Repeated evaluation over {} seeds: {}'.format(len(reports), summary))
    return summary
