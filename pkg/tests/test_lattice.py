import unittest
import shutil
import os

import numpy as np
import matplotlib.image

from fluidprior.exceptions import ConfigurationError, FileFormatError, NumericalError
from fluidprior.lattice import LatticeConfig, ObstacleMask, LatticeSimulation
from fluidprior.lattice import compute_equilibrium, collide, propagate, bounce_back
from fluidprior.lattice import apply_inflow, apply_outflow, compute_macroscopics, compute_vorticity
from fluidprior.lattice import MacroscopicFields, simulate_step, total_mass, snapshot_array
from fluidprior.lattice import read_snapshots, write_snapshots, snapshot_io
from fluidprior.lattice import shedding_frequency, strouhal_number, poiseuille_profile
from fluidprior.lattice.d2q9 import EX, EY, WEIGHTS, OPPOSITE


slow = unittest.skipUnless(os.environ.get("FLUIDPRIOR_SLOW") == "1", "set FLUIDPRIOR_SLOW=1 to run")


class TestD2Q9(unittest.TestCase):
    def test_weights(self):
        self.assertAlmostEqual(WEIGHTS.sum(), 1, places=15)


    def test_opposite(self):
        np.testing.assert_array_equal(OPPOSITE, [0, 3, 4, 1, 2, 7, 8, 5, 6])
        np.testing.assert_array_equal(EX[OPPOSITE], -EX)
        np.testing.assert_array_equal(EY[OPPOSITE], -EY)


    def test_second_moment(self):
        self.assertAlmostEqual(np.sum(WEIGHTS*EX*EX), 1/3., places=15)
        self.assertAlmostEqual(np.sum(WEIGHTS*EX*EY), 0, places=15)



class TestKernels(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(10)


    def test_equilibrium_moments(self):
        rho = 1 + 0.1*self.rng.random((8, 6))
        ux = 0.05*self.rng.standard_normal((8, 6))
        uy = 0.05*self.rng.standard_normal((8, 6))

        f_eq = compute_equilibrium(rho, (ux, uy))

        self.assertEqual(f_eq.shape, (9, 8, 6))
        np.testing.assert_allclose(f_eq.sum(axis=0), rho, rtol=1e-14)
        np.testing.assert_allclose(np.tensordot(EX, f_eq, axes=(0, 0)), rho*ux, atol=1e-15)
        np.testing.assert_allclose(np.tensordot(EY, f_eq, axes=(0, 0)), rho*uy, atol=1e-15)


    def test_equilibrium_rest(self):
        np.testing.assert_allclose(compute_equilibrium(1.0, (0.0, 0.0)), WEIGHTS, rtol=1e-15)


    def test_equilibrium_errors(self):
        with self.assertRaises(ValueError):
            compute_equilibrium(0.0, (0.0, 0.0))

        with self.assertRaises(ValueError):
            compute_equilibrium(1.0, (0.5, 0.0))

        with self.assertRaises(ValueError):
            compute_equilibrium(np.nan, (0.0, 0.0))


    def test_collide_fixed_point(self):
        f_eq = compute_equilibrium(np.ones((4, 4)), (0.02, 0.01))
        np.testing.assert_array_equal(collide(f_eq, f_eq, 0.8), f_eq)


    def test_collide_tau_one(self):
        f = self.rng.random((9, 4, 4))
        f_eq = self.rng.random((9, 4, 4))
        np.testing.assert_allclose(collide(f, f_eq, 1.0), f_eq, atol=1e-15)


    def test_collide_unstable(self):
        f = np.ones((9, 4, 4))
        with self.assertRaises(ConfigurationError):
            collide(f, f, 0.5)


    def test_collide_solid_untouched(self):
        f = self.rng.random((9, 4, 4))
        f_eq = self.rng.random((9, 4, 4))
        fluid = np.ones((4, 4), dtype=bool)
        fluid[1, 2] = False

        result = collide(f, f_eq, 0.7, fluid=fluid)

        np.testing.assert_array_equal(result[:, 1, 2], f[:, 1, 2])


    def test_propagate(self):
        f = np.zeros((9, 5, 4))
        f[:, 2, 1] = np.arange(9)

        streamed = propagate(f)

        for i in range(9):
            x, y = (2 + EX[i]) % 5, (1 + EY[i]) % 4
            self.assertEqual(streamed[i, x, y], i)
        self.assertAlmostEqual(streamed.sum(), f.sum())


    def test_propagate_wraps(self):
        f = np.zeros((9, 5, 4))
        f[1, 4, 0] = 1.
        self.assertEqual(propagate(f)[1, 0, 0], 1.)


    def test_bounce_back(self):
        f = self.rng.random((9, 3, 3))
        solid = np.zeros((3, 3), dtype=bool)
        solid[1, 1] = True

        result = bounce_back(f, solid)

        np.testing.assert_array_equal(result[:, 1, 1], f[OPPOSITE, 1, 1])
        np.testing.assert_array_equal(result[:, 0, 0], f[:, 0, 0])


    def test_bounce_back_twice(self):
        f = self.rng.random((9, 3, 3))
        solid = self.rng.random((3, 3)) > 0.5
        np.testing.assert_array_equal(bounce_back(bounce_back(f, solid), solid), f)


    def test_inflow(self):
        f = self.rng.random((9, 6, 4))
        result = apply_inflow(f, 0.05)

        fields = compute_macroscopics(result)
        np.testing.assert_allclose(fields.rho[0], 1, rtol=1e-14)
        np.testing.assert_allclose(fields.ux[0], 0.05, rtol=1e-13)
        np.testing.assert_array_equal(result[:, 1:], f[:, 1:])

        with self.assertRaises(ConfigurationError):
            apply_inflow(f, 0.25)


    def test_outflow(self):
        f = self.rng.random((9, 6, 4))
        result = apply_outflow(f)
        np.testing.assert_array_equal(result[:, -1], f[:, -2])


    def test_macroscopics_blow_up(self):
        f = np.ones((9, 3, 3))
        f[0, 1, 1] = np.inf
        with self.assertRaises(NumericalError):
            compute_macroscopics(f, step=12)


    def test_macroscopics_negative_density(self):
        f = np.ones((9, 3, 3))
        f[:, 1, 1] = -1
        with self.assertRaises(NumericalError):
            compute_macroscopics(f)


    def test_vorticity_rotation(self):
        x, y = np.meshgrid(np.arange(10.), np.arange(8.), indexing="ij")
        omega = 0.01
        fields = MacroscopicFields(rho=np.ones((10, 8)), ux=-omega*y, uy=omega*x)

        snapshot = compute_vorticity(fields, step_index=3)

        np.testing.assert_allclose(snapshot.omega, 2*omega, rtol=1e-12)
        self.assertEqual(snapshot.step_index, 3)


    def test_vorticity_solid_zero(self):
        x, y = np.meshgrid(np.arange(6.), np.arange(6.), indexing="ij")
        fields = MacroscopicFields(rho=np.ones((6, 6)), ux=-y, uy=x)
        solid = np.zeros((6, 6), dtype=bool)
        solid[2, 3] = True

        self.assertEqual(compute_vorticity(fields, solid=solid).omega[2, 3], 0)


    def test_vorticity_too_small(self):
        fields = MacroscopicFields(rho=np.ones((2, 6)), ux=np.zeros((2, 6)), uy=np.zeros((2, 6)))
        with self.assertRaises(ValueError):
            compute_vorticity(fields)



class TestLatticeConfig(unittest.TestCase):
    def test_cylinder_defaults(self):
        config = LatticeConfig.cylinder()

        u_inlet = 0.1/np.sqrt(3)
        self.assertEqual((config.nx, config.ny), (256, 64))
        self.assertAlmostEqual(config.u_inlet, u_inlet, places=15)
        self.assertAlmostEqual(config.tau, 3*u_inlet*32/500. + 0.5, places=15)
        self.assertGreater(config.tau, 0.5)
        self.assertTrue(config.obstacle.solid[64, 32])
        self.assertFalse(config.obstacle.solid[0].any())


    def test_reynolds_override(self):
        config = LatticeConfig.cylinder(reynolds=250)
        self.assertAlmostEqual(config.tau, 3*config.u_inlet*32/250. + 0.5, places=15)


    def test_unstable_tau(self):
        with self.assertRaises(ConfigurationError) as context:
            LatticeConfig(nx=16, ny=16, u_inlet=0.05, tau=0.5)
        self.assertEqual(context.exception.key, "tau")


    def test_inconsistent_tau(self):
        with self.assertRaises(ConfigurationError):
            LatticeConfig(nx=16, ny=16, u_inlet=0.05, reynolds=100, diameter=4, tau=0.9)


    def test_high_mach(self):
        with self.assertRaises(ConfigurationError):
            LatticeConfig(nx=16, ny=16, u_inlet=0.25, reynolds=100)


    def test_obstacle_at_inlet(self):
        obstacle = ObstacleMask.cylinder(32, 16, 1, 8, 3)
        with self.assertRaises(ConfigurationError):
            LatticeConfig(nx=32, ny=16, u_inlet=0.05, reynolds=100, obstacle=obstacle)


    def test_obstacle_shape(self):
        with self.assertRaises(ConfigurationError):
            LatticeConfig(nx=32, ny=16, u_inlet=0.05, reynolds=100, obstacle=ObstacleMask.empty(16, 16))


    def test_walls(self):
        channel = LatticeConfig(nx=8, ny=6, u_inlet=0.0, tau=1.0)
        self.assertTrue(channel.solid[:, 0].all() and channel.solid[:, -1].all())
        self.assertFalse(channel.solid[:, 1:-1].any())

        closed = LatticeConfig(nx=8, ny=6, u_inlet=0.0, tau=1.0, walls="closed", inflow=False)
        self.assertTrue(closed.solid[0].all() and closed.solid[-1].all())

        periodic = LatticeConfig(nx=8, ny=6, u_inlet=0.0, tau=1.0, walls="none")
        self.assertFalse(periodic.solid.any())

        with self.assertRaises(ConfigurationError):
            LatticeConfig(nx=8, ny=6, u_inlet=0.0, tau=1.0, walls="round")


    def test_viscosity(self):
        config = LatticeConfig(nx=8, ny=6, u_inlet=0.0, tau=1.0)
        self.assertAlmostEqual(config.viscosity, 1/6.)



class TestObstacleMask(unittest.TestCase):
    def setUp(self):
        self.output_test_dir = ".tests/"

        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)
        os.makedirs(self.output_test_dir)


    def tearDown(self):
        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)


    def test_cylinder(self):
        mask = ObstacleMask.cylinder(40, 20, 10, 10, 3)

        self.assertEqual(mask.shape, (40, 20))
        self.assertTrue(mask.solid[10, 10])
        self.assertTrue(mask.solid[13, 10])
        self.assertFalse(mask.solid[14, 10])
        self.assertEqual(mask.solid.sum(), 29)


    def test_from_image(self):
        nx, ny = 12, 8
        image = np.ones((ny, nx))
        image[2:5, 3:6] = 0

        filename = os.path.join(self.output_test_dir, "obstacle.png")
        matplotlib.image.imsave(filename, image, cmap="gray", vmin=0, vmax=1)

        mask = ObstacleMask.from_image(filename, nx, ny)

        expected = np.zeros((nx, ny), dtype=bool)
        expected[3:6, ny - 5:ny - 2] = True
        np.testing.assert_array_equal(mask.solid, expected)


    def test_union(self):
        a = ObstacleMask.cylinder(10, 10, 3, 3, 1)
        b = ObstacleMask.cylinder(10, 10, 6, 6, 1)
        self.assertEqual((a | b).solid.sum(), a.solid.sum() + b.solid.sum())



class TestSimulation(unittest.TestCase):
    def test_closed_box_mass(self):
        config = LatticeConfig(nx=128, ny=32, u_inlet=0.0, tau=0.8, walls="closed", inflow=False, outflow=False)
        simulation = LatticeSimulation(config, logger_level="error")

        x, y = np.meshgrid(np.arange(128), np.arange(32), indexing="ij")
        rho = 1 + 0.01*np.exp(-((x - 40)**2 + (y - 16)**2)/20.)
        simulation.f = compute_equilibrium(rho, (0.0, 0.0))

        initial = simulation.mass()
        simulation.run(1000)

        self.assertLess(abs(simulation.mass() - initial)/initial, 1e-12)


    def test_periodic_uniform_flow(self):
        config = LatticeConfig(nx=8, ny=8, u_inlet=0.05, tau=0.9, walls="none", inflow=False, outflow=False)
        f = compute_equilibrium(np.ones((8, 8)), (0.05, 0.0))

        for step in range(10):
            f = simulate_step(f, config, step)

        fields = compute_macroscopics(f)
        np.testing.assert_allclose(fields.ux, 0.05, rtol=1e-12)
        np.testing.assert_allclose(fields.uy, 0, atol=1e-15)


    def test_poiseuille(self):
        ny, force, tau = 33, 1e-5, 1.0
        config = LatticeConfig(nx=4, ny=ny, u_inlet=0.0, tau=tau, inflow=False, outflow=False,
                               body_force=(force, 0.0))

        simulation = LatticeSimulation(config, logger_level="error")
        simulation.run(8000)

        ux = simulation.fields().ux.mean(axis=0)
        analytic = poiseuille_profile(ny, force, tau)

        middle = ny//2
        self.assertLess(abs(ux[middle] - analytic[middle])/analytic[middle], 0.02)
        self.assertLess(np.max(np.abs(ux[1:-1] - analytic[1:-1]))/analytic.max(), 0.02)


    def test_collect_snapshots(self):
        config = LatticeConfig.cylinder(nx=64, ny=32, radius=4, reynolds=100)
        simulation = LatticeSimulation(config, logger_level="error")

        snapshots = simulation.collect_snapshots(warmup=20, interval=5, count=4)

        self.assertEqual(len(snapshots), 4)
        self.assertEqual([snapshot.step_index for snapshot in snapshots], [20, 25, 30, 35])
        self.assertEqual(snapshots[0].omega.shape, (64, 32))
        self.assertEqual(len(simulation.probe_series), 16)
        self.assertTrue(np.all(snapshot_array(snapshots)[:, config.solid] == 0))


    def test_collect_snapshots_errors(self):
        config = LatticeConfig.cylinder(nx=64, ny=32, radius=4, reynolds=100)
        simulation = LatticeSimulation(config, logger_level="error")

        with self.assertRaises(ValueError):
            simulation.collect_snapshots(warmup=0, interval=5, count=0)
        with self.assertRaises(ValueError):
            simulation.collect_snapshots(warmup=0, interval=0, count=3)


    def test_deterministic(self):
        config = LatticeConfig.cylinder(nx=64, ny=32, radius=4, reynolds=100)

        first = LatticeSimulation(config, logger_level="error").collect_snapshots(warmup=10, interval=3, count=3)
        second = LatticeSimulation(config, logger_level="error").collect_snapshots(warmup=10, interval=3, count=3)

        np.testing.assert_array_equal(snapshot_array(first), snapshot_array(second))


    def test_total_mass(self):
        f = np.full((9, 4, 4), 0.1)
        self.assertAlmostEqual(total_mass(f), 14.4, places=12)


    @slow
    def test_cylinder_shedding(self):
        config = LatticeConfig.cylinder()
        simulation = LatticeSimulation(config, logger_level="error")
        simulation.collect_snapshots(warmup=20000, interval=1, count=20001)

        strouhal = strouhal_number(simulation.probe_series, config.diameter, config.u_inlet,
                                   height=config.channel_height)
        self.assertGreaterEqual(strouhal, 0.15)
        self.assertLessEqual(strouhal, 0.30)



class TestSnapshots(unittest.TestCase):
    def setUp(self):
        self.output_test_dir = ".tests/"
        self.filename = os.path.join(self.output_test_dir, "snapshots.flq")

        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)
        os.makedirs(self.output_test_dir)

        self.data = np.random.default_rng(10).standard_normal((3, 6, 4)).astype(np.float32)


    def tearDown(self):
        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)


    def test_round_trip(self):
        write_snapshots(self.filename, self.data)
        result = read_snapshots(self.filename)

        self.assertEqual(result.dtype, np.float32)
        self.assertEqual(result.tobytes(), self.data.tobytes())


    def test_layout(self):
        write_snapshots(self.filename, self.data)

        with open(self.filename, "rb") as f:
            content = f.read()

        self.assertEqual(content[:4], b"FLQ1")
        self.assertEqual(np.frombuffer(content[4:20], dtype="<u4").tolist(), [6, 4, 3, 0])
        self.assertEqual(len(content), 20 + 4*6*4*3)

        # x runs fastest in the payload
        payload = np.frombuffer(content[20:], dtype="<f4")
        self.assertEqual(payload[1], self.data[0, 1, 0])


    def test_truncated(self):
        write_snapshots(self.filename, self.data)
        with open(self.filename, "rb") as f:
            content = f.read()
        with open(self.filename, "wb") as f:
            f.write(content[:-10])

        with self.assertRaises(FileFormatError) as context:
            read_snapshots(self.filename)

        self.assertIn("expected {} bytes".format(len(content)), str(context.exception))
        self.assertIn("got {}".format(len(content) - 10), str(context.exception))


    def test_bad_magic(self):
        write_snapshots(self.filename, self.data)
        with open(self.filename, "r+b") as f:
            f.write(b"XXXX")

        with self.assertRaises(FileFormatError):
            read_snapshots(self.filename)


    def test_trailing_bytes(self):
        write_snapshots(self.filename, self.data)
        with open(self.filename, "ab") as f:
            f.write(b"\x00"*8)

        with self.assertRaises(FileFormatError):
            read_snapshots(self.filename)


    def test_snapshot_io(self):
        snapshot_io("write", self.filename, self.data)
        np.testing.assert_array_equal(snapshot_io("read", self.filename), self.data)

        with self.assertRaises(ValueError):
            snapshot_io("append", self.filename)
        with self.assertRaises(ValueError):
            snapshot_io("write", self.filename)



class TestAnalysis(unittest.TestCase):
    def test_shedding_frequency(self):
        t = np.arange(400)
        series = 0.3 + np.sin(2*np.pi*0.05*t)

        self.assertAlmostEqual(shedding_frequency(series), 0.05, delta=1e-3)
        self.assertAlmostEqual(shedding_frequency(series[::2], sample_interval=2), 0.05, delta=1e-3)


    def test_strouhal_number(self):
        t = np.arange(1000)
        series = np.sin(2*np.pi*0.004*t)
        self.assertAlmostEqual(strouhal_number(series, diameter=32, u_inlet=0.64), 0.2, delta=0.005)


    def test_strouhal_number_blocked_channel(self):
        t = np.arange(1000)
        series = np.sin(2*np.pi*0.004*t)

        # half the channel blocked: gap speed is twice the inlet speed
        self.assertAlmostEqual(strouhal_number(series, diameter=32, u_inlet=0.32, height=64), 0.2, delta=0.005)
        self.assertAlmostEqual(strouhal_number(series, diameter=32, u_inlet=0.64, height=64),
                               strouhal_number(series, diameter=32, u_inlet=0.64)/2, places=12)

        with self.assertRaises(ValueError):
            strouhal_number(series, diameter=32, u_inlet=0.64, height=32)


    def test_channel_height(self):
        self.assertEqual(LatticeConfig.cylinder().channel_height, 62)
        self.assertEqual(LatticeConfig.cylinder(nx=64, ny=32, radius=4, reynolds=100, walls="none").channel_height, 32)


    def test_too_short(self):
        with self.assertRaises(ValueError):
            shedding_frequency([1, 2, 3])


    def test_poiseuille_profile(self):
        ux = poiseuille_profile(33, 1e-5, 1.0)

        self.assertEqual(ux[0], 0)
        self.assertEqual(ux[-1], 0)
        np.testing.assert_allclose(ux[1:17], ux[31:15:-1])
        self.assertAlmostEqual(ux[16], 1e-5*3*15.5**2, places=12)
