# Bundled UCI datasets: breast-cancer-wisconsin.data (original, 699 rows) and haberman.data (306 rows).
