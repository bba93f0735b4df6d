import logging
import numpy as np

from matplotlib.figure import Figure
from typing import Callable, Dict

from interface.result_table import ResultTable

logger = logging.getLogger(__name__)


class FigurePlotter:
    """
    Draw a written ResultTable as a matplotlib figure.

    Attributes:
    -----------
    table : ResultTable
        Table to draw; its name selects the plot.
    figure : Figure
        Figure the plot is drawn on.
    """

    def __init__(self, table: ResultTable) -> None:
        """
        Initialize the plotter with a ResultTable.
        Args:
            table (ResultTable): A table read back with ResultTable.read_csv.
        """
        self.table = table
        self.figure = Figure(figsize=(8, 5), layout="constrained")

    @property
    def plots(self) -> Dict[str, Callable[[], None]]:
        return {
            "s21_map": self.plot_s21_map,
            "freq_shift": self.plot_freq_shift,
            "signal": self.plot_signal,
            "snr": self.plot_snr,
            "contour": self.plot_contour,
            "linecut": self.plot_linecut,
            "budget": self.plot_budget,
            "levels": self.plot_levels,
            "capacitance": self.plot_capacitance,
        }

    def draw(self) -> Figure:
        """
        Draw the plot that belongs to the table name.
        """
        if self.table.name not in self.plots:
            raise ValueError(
                f"Invalid value for 'table': {self.table.name}. Use one of {sorted(self.plots)}."
            )
        self.plots[self.table.name]()
        return self.figure

    def save(self, path: str, dpi: int = 150) -> None:
        self.draw()
        self.figure.savefig(path, dpi=dpi)
        logger.info(f"Rendered table '{self.table.name}' to {path}")

    def label(self, column: str) -> str:
        return f"{column} [{self.table.units.get(column, '1')}]"

    def plot_s21_map(self) -> None:
        """
        |S21| versus frequency, one panel per state and one line per power.
        """
        data = self.table.data
        states = list(dict.fromkeys(data["state"]))
        axes = self.figure.subplots(1, len(states), sharey=True, squeeze=False)[0]
        for ax, state in zip(axes, states):
            for power, group in data[data["state"] == state].groupby("p_rf_dbm"):
                ax.plot(group["frequency_ghz"], group["s21_mag_db"], linewidth=0.8, label=f"{power:g} dBm")
            ax.set_title(f"State {state}")
            ax.set_xlabel(self.label("frequency_ghz"))
        axes[0].set_ylabel(self.label("s21_mag_db"))
        axes[-1].legend(fontsize="x-small", ncol=2)

    def plot_freq_shift(self) -> None:
        data = self.table.data
        ax = self.figure.subplots()
        ax.plot(data["p_rf_dbm"], data["delta_f_mhz"], marker="o", color="firebrick")
        ax.set_xlabel(self.label("p_rf_dbm"))
        ax.set_ylabel(self.label("delta_f_mhz"))
        ax.set_title("Resonance shift between |T> and |S>")
        ax.grid(linestyle="--", alpha=0.7)

    def plot_signal(self) -> None:
        data = self.table.data
        ax = self.figure.subplots()
        for case, color in (("case1", "forestgreen"), ("case2", "royalblue")):
            ax.plot(data["p_rf_dbm"], data[f"p_sig_{case}_dbm"], color=color, label=case)
        ax.set_xlabel(self.label("p_rf_dbm"))
        ax.set_ylabel("p_sig [dBm]")
        twin = ax.twinx()
        for case, color in (("case1", "forestgreen"), ("case2", "royalblue")):
            twin.plot(data["p_rf_dbm"], data[f"separation_norm_{case}"], color=color, linestyle="--")
        twin.set_ylabel("normalised separation [1]")
        ax.legend()

    def plot_snr(self) -> None:
        data = self.table.data
        ax = self.figure.subplots()
        ax.plot(data["p_rf_dbm"], data["snr_n_dbhz"], label="model T_N")
        ax.plot(data["p_rf_dbm"], data["snr_n_measured_dbhz"], linestyle="--", label="measured T_N")
        ax.set_xlabel(self.label("p_rf_dbm"))
        ax.set_ylabel(self.label("snr_n_dbhz"))
        ax.grid(linestyle="--", alpha=0.7)
        ax.legend()

    def plot_contour(self) -> None:
        data = self.table.data
        t_sys = np.unique(data["t_sys_k"])
        t_int = np.unique(data["t_int_us"])
        snr_db = data.pivot(index="t_int_us", columns="t_sys_k", values="snr_db").to_numpy()
        ax = self.figure.subplots()
        filled = ax.contourf(t_sys, t_int, snr_db, levels=20, cmap="viridis")
        ax.contour(t_sys, t_int, snr_db, levels=[11.5], colors="white", linewidths=1.0)
        ax.set_yscale("log")
        ax.set_xlabel(self.label("t_sys_k"))
        ax.set_ylabel(self.label("t_int_us"))
        self.figure.colorbar(filled, ax=ax, label=self.label("snr_db"))

    def plot_linecut(self) -> None:
        data = self.table.data
        top, bottom = self.figure.subplots(2, 1, sharex=True)
        top.plot(data["offset_mv"], data["c_q_eff_af"])
        top.set_ylabel(self.label("c_q_eff_af"))
        bottom.plot(data["offset_mv"], data["delta_s21_db"], color="firebrick")
        bottom.set_ylabel(self.label("delta_s21_db"))
        bottom.set_xlabel(self.label("offset_mv"))

    def plot_budget(self) -> None:
        """
        Bar chart of the input-referred noise contributions.
        """
        row = self.table.data.iloc[0]
        columns = ["t_amb_k"] + [c for c in self.table.data.columns if c.endswith("_referred_k")]
        ax = self.figure.subplots()
        ax.bar(columns, [row[c] for c in columns], color="royalblue")
        ax.set_yscale("log")
        ax.set_ylabel("referred noise temperature [K]")
        ax.set_title(f"T_N = {row['t_n_k']:.3g} K")
        ax.tick_params(axis="x", labelrotation=45)

    def plot_levels(self) -> None:
        data = self.table.data
        left, right = self.figure.subplots(1, 2)
        for column in [c for c in data.columns if c.startswith("e_")]:
            left.plot(data["detuning_uev"], data[column], label=column)
        left.set_xlabel(self.label("detuning_uev"))
        left.set_ylabel("energy [ueV]")
        left.legend(fontsize="x-small")
        right.plot(data["detuning_uev"], data["c_q_ground_af"], label="ground")
        right.plot(data["detuning_uev"], data["c_q_excited_af"], label="excited")
        right.set_xlabel(self.label("detuning_uev"))
        right.set_ylabel("C_q [aF]")
        right.legend(fontsize="x-small")

    def plot_capacitance(self) -> None:
        data = self.table.data
        ax = self.figure.subplots()
        for factor, group in data.groupby("adiabaticity_factor"):
            line = ax.plot(group["amplitude_mv"], group["c_q_eff_af"], label=f"factor {factor:g}")[0]
            ax.plot(group["amplitude_mv"], group["c_q_closed_af"], linestyle=":", color=line.get_color())
        ax.set_xlabel(self.label("amplitude_mv"))
        ax.set_ylabel(self.label("c_q_eff_af"))
        ax.legend()
