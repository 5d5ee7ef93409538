#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Models for persisted runs.
"""

from datetime import datetime

from sqlalchemy import Column
from sqlalchemy.orm import declarative_base
from sqlalchemy.types import Integer, Float, DateTime, Boolean, String, Enum

from . import engine

#: Base class for declared models.
Base = declarative_base()


def check():
    """Check if all the tables are present in the DB, create them otherwise."""
    Base.metadata.create_all(engine.Engine, checkfirst=True)


def _millis(timestamp):
    return int(timestamp.timestamp() * 1000)


class FitRun(Base):
    """One call of the alternating solver."""
    __tablename__ = 'FitRun'
    __table_args__ = {'mysql_engine': 'InnoDB'}

    id = Column(Integer, primary_key=True, autoincrement=True)
    timestamp = Column(DateTime, nullable=False, default=datetime.now)
    manifest = Column(String(1024), nullable=False, default='')
    gamma_a = Column(Float, nullable=False)
    gamma_b = Column(Float, nullable=False)
    gamma_c = Column(Float, nullable=False)
    sigma = Column(Float, nullable=False)
    latent_dim = Column(Integer, nullable=False)
    seed = Column(Integer, nullable=False)
    sweeps = Column(Integer, nullable=False)
    objective = Column(Float, nullable=False)
    converged = Column(Boolean, nullable=False)

    def __init__(self, manifest, config, latent_dim, sweeps, objective, converged):
        self.manifest = manifest
        self.gamma_a = config.gamma_a
        self.gamma_b = config.gamma_b
        self.gamma_c = config.gamma_c
        self.sigma = config.sigma
        self.latent_dim = latent_dim
        self.seed = config.rng_seed
        self.sweeps = sweeps
        self.objective = objective
        self.converged = converged

    def __str__(self):
        return 'FitRun gammas ({0.gamma_a:g}, {0.gamma_b:g}, {0.gamma_c:g}) objective {0.objective:.6g}'.format(self)

    def jsondict(self):
        """Return a JSON-serializable dictionary representing the object"""
        return {
            "id": self.id,
            "timestamp": _millis(self.timestamp),
            "manifest": self.manifest,
            "gamma_a": self.gamma_a,
            "gamma_b": self.gamma_b,
            "gamma_c": self.gamma_c,
            "sigma": self.sigma,
            "latent_dim": self.latent_dim,
            "seed": self.seed,
            "sweeps": self.sweeps,
            "objective": self.objective,
            "converged": self.converged,
        }


class Evaluation(Base):
    """Downstream metrics of one evaluation run."""
    __tablename__ = 'Evaluation'
    __table_args__ = {'mysql_engine': 'InnoDB'}

    METHODS = ('knn', 'select', 'transform', 'map', 'rfs', 'mtfs', 'bsf', 'cat')

    id = Column(Integer, primary_key=True, autoincrement=True)
    timestamp = Column(DateTime, nullable=False, default=datetime.now)
    method = Column(Enum(*METHODS, name='evaluation_method'), nullable=False)
    manifest = Column(String(1024), nullable=False, default='')
    accuracy = Column(Float)
    macro_f1 = Column(Float)
    mean_average_precision = Column(Float)
    n_train = Column(Integer, nullable=False, default=0)
    n_test = Column(Integer, nullable=False, default=0)

    def __init__(self, method, manifest, report):
        self.method = method
        self.manifest = manifest
        self.accuracy = report.accuracy
        self.macro_f1 = report.macro_f1
        self.mean_average_precision = report.mean_average_precision
        self.n_train = report.n_train
        self.n_test = report.n_test

    def __str__(self):
        return 'Evaluation {0.method} on {0.n_test} samples'.format(self)

    def jsondict(self):
        """Return a JSON-serializable dictionary representing the object"""
        return {
            "id": self.id,
            "timestamp": _millis(self.timestamp),
            "method": self.method,
            "manifest": self.manifest,
            "accuracy": self.accuracy,
            "macro_f1": self.macro_f1,
            "mean_average_precision": self.mean_average_precision,
            "n_train": self.n_train,
            "n_test": self.n_test,
        }
