#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Dataset ingestion: CSV matrices, JSON manifests, label encodings and
feature normalisation. Also reads and writes model files.
"""

import json
import os

import numpy as np
from sklearn.preprocessing import MinMaxScaler, StandardScaler

from lm3fe.common import LOG, LabelEncodingError, ShapeError, ConfigError
from .models import MultiModalDataset, LM3FEModel


ENCODINGS = ('zero_one', 'pm_one')
SCHEMES = ('unit_range', 'zscore')

_SCALERS = {
    'unit_range': MinMaxScaler,
    'zscore': StandardScaler,
}


def normalize_features(raw, scheme='unit_range'):
    """Normalise every feature row of every matrix.

    `unit_range` maps each row affinely onto [0, 1], `zscore` gives it zero
    mean and unit population variance. Constant rows become all-zero under
    both schemes."""
    try:
        scaler = _SCALERS[scheme]
    except KeyError:
        raise ConfigError('Unknown normalisation scheme {!r}.'.format(scheme))

    normalized = []
    for matrix in raw:
        matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        if matrix.size == 0:
            raise ShapeError('Cannot normalise an empty matrix.')
        # Scalers work on columns, features are rows here.
        rows = scaler().fit_transform(matrix.T).T
        constant = np.ptp(matrix, axis=1) == 0
        rows[constant] = 0.0
        normalized.append(rows)
    return normalized


def encode_labels(raw, encoding='zero_one'):
    """Map a raw label matrix onto {+1, -1}."""
    raw = np.atleast_2d(np.asarray(raw, dtype=float))
    if encoding == 'zero_one':
        allowed = (0.0, 1.0)
    elif encoding == 'pm_one':
        allowed = (-1.0, 1.0)
    else:
        raise ConfigError('Unknown label encoding {!r}.'.format(encoding))

    if not np.all(np.isin(raw, allowed)):
        raise LabelEncodingError(
            'Label entries must be in {} for encoding {}.'.format(allowed, encoding)
        )
    return np.where(raw > 0, 1.0, -1.0)


def read_matrix(path):
    """Read a header-free, comma separated matrix."""
    LOG.debug('Reading matrix {}'.format(path))
    return np.loadtxt(path, delimiter=',', ndmin=2, encoding='utf-8')


def write_matrix(path, matrix):
    np.savetxt(path, np.atleast_2d(matrix), delimiter=',', fmt='%.17g')


def load_dataset(paths, label_path, encoding='zero_one', scheme='unit_range'):
    """Load modality files (d_v x N each) and a label file (N x P)."""
    raw = [read_matrix(path) for path in paths]
    labels = encode_labels(read_matrix(label_path), encoding)
    for path, matrix in zip(paths, raw):
        if matrix.shape[1] != labels.shape[0]:
            raise ShapeError('{} has {} samples, labels have {}.'.format(
                path, matrix.shape[1], labels.shape[0]
            ))
    data = MultiModalDataset.create(normalize_features(raw, scheme), labels)
    LOG.info('Loaded {}'.format(data))
    return data


def load_manifest(path, encoding='zero_one', scheme='unit_range'):
    """Load the dataset described by a JSON manifest.

    The manifest holds `modalities` (list of paths), `labels`, and
    optionally `encoding` and `normalization`, overriding the arguments.
    Relative paths are resolved against the manifest directory."""
    with open(path, 'r', encoding='utf-8') as source:
        manifest = json.load(source)

    base = os.path.dirname(os.path.abspath(path))
    resolve = lambda name: os.path.join(base, name)
    try:
        paths = [resolve(name) for name in manifest['modalities']]
        label_path = resolve(manifest['labels'])
    except KeyError as error:
        raise ConfigError('Manifest {} lacks {}.'.format(path, error))

    return load_dataset(
        paths,
        label_path,
        encoding=manifest.get('encoding', encoding),
        scheme=manifest.get('normalization', scheme)
    )


def write_dataset(directory, modalities, labels, prefix='modality', scheme='unit_range'):
    """Write d_v x N modality matrices and N x P sign labels as CSV files
    plus a manifest; return the manifest path. Labels are written in the
    zero_one encoding."""
    os.makedirs(directory, exist_ok=True)
    names = []
    for v, matrix in enumerate(modalities):
        name = '{}_{}.csv'.format(prefix, v)
        write_matrix(os.path.join(directory, name), matrix)
        names.append(name)
    write_matrix(os.path.join(directory, 'labels.csv'), (np.asarray(labels) > 0).astype(int))

    manifest = {
        "modalities": names,
        "labels": "labels.csv",
        "encoding": "zero_one",
        "normalization": scheme,
    }
    path = os.path.join(directory, 'manifest.json')
    write_json(path, manifest)
    return path


def write_json(path, data):
    with open(path, 'w', encoding='utf-8') as target:
        json.dump(data, target, indent=1, sort_keys=True)
        target.write('\n')


def save_model(path, model):
    write_json(path, model.jsondict())


def load_model(path):
    with open(path, 'r', encoding='utf-8') as source:
        return LM3FEModel.from_jsondict(json.load(source))
