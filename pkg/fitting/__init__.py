# Decay-law fitting on energy traces

from .decay import DecayFit, FitModel, fit_decay, crossover_time

__all__ = ['DecayFit', 'FitModel', 'fit_decay', 'crossover_time']
