"""Published comparison figures (percent), kept verbatim for the compare report.

These rows are not reproduced by this package; they are emitted with
source ``published`` next to the rows measured here.
Columns: method, accuracy, sensitivity, specificity, f1.
"""

PUBLISHED = {
    "wbcd": [
        ("L-Perceptron", "97.42", "98.73", "96.2", "96.50"),
        ("Naive Bayes", "97.36", "97.4", "97.9", "97.64"),
        ("RBF Network", "96.77", "97.07", "96.23", "96.6"),
        ("J48", "93.41", "93.4", "90.37", "91.86"),
    ],
    "hsd": [
        ("L-Perceptron", "75.18", "90.04", "37.08", "83.86"),
        ("Logistic Regression", "74.27", "94.77", "22.95", "82.62"),
        ("Linear Discriminant Analysis", "73.78", "95.42", "19.67", "82.71"),
        ("KNN", "71.03", "88.23", "34.42", "81.57"),
        ("CART", "64.02", "74.5", "26.22", "78.44"),
        ("Naive Bayes", "74.17", "94.11", "27.86", "82.52"),
        ("SVM", "69.77", "95.42", "3.27", "82.71"),
        ("MLP", "66.21", "62.74", "55.73", "72.64"),
        ("Random Forest", "67.27", "81.69", "22.95", "80.38"),
    ],
}
