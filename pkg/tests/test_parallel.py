from src.parallel import map_jobs


class TestMapJobs:

    def test_serial(self):
        assert map_jobs(pow, [(2, 3), (3, 2), (5, 0)]) == [8, 9, 1]

    def test_empty(self):
        assert map_jobs(pow, [], jobs=4) == []

    def test_pool_keeps_order(self):
        tasks = [(n, 2) for n in range(8)]
        assert map_jobs(pow, tasks, jobs=2) == [n * n for n in range(8)]

    def test_pool_reports_progress(self, mocker):
        bar = mocker.patch("src.parallel.tqdm", side_effect=lambda iterable, **kwargs: iterable)
        tasks = [(n, 3) for n in range(5)]
        assert map_jobs(pow, tasks, jobs=2, progress=True, desc="cubes") == [n ** 3 for n in range(5)]
        bar.assert_called_once()
        kwargs = bar.call_args.kwargs
        assert kwargs["total"] == 5
        assert kwargs["desc"] == "cubes"
        assert kwargs["disable"] is False

    def test_serial_progress_can_be_disabled(self, mocker):
        bar = mocker.patch("src.parallel.tqdm", side_effect=lambda iterable, **kwargs: iterable)
        map_jobs(pow, [(2, 2), (3, 3)])
        assert bar.call_args.kwargs["disable"] is True
