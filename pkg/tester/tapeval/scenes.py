# -*- coding: utf-8 -*-
# Published per-scene adherence scores at thresholds 0, 1, 2, 4, 8, 16 plus the
# reported average, followed by the reported overall rows.

BASELINE = {
    "ball_05": (0.4538, 0.4677, 0.4840, 0.5095, 0.5518, 0.6234, 0.5150),
    "ball_06": (0.6553, 0.6684, 0.6831, 0.7076, 0.7456, 0.8085, 0.7114),
    "basket_08": (0.6785, 0.6851, 0.6930, 0.7068, 0.7314, 0.7694, 0.7107),
    "basket_09": (0.6781, 0.6829, 0.6892, 0.6993, 0.7166, 0.7467, 0.7021),
    "eggs_04": (0.9539, 0.9584, 0.9621, 0.9656, 0.9692, 0.9738, 0.9638),
    "football_04": (0.6541, 0.6670, 0.6831, 0.7065, 0.7478, 0.8061, 0.7108),
    "horse_11": (0.7777, 0.8035, 0.8306, 0.8631, 0.9022, 0.9445, 0.8536),
    "horse_12": (0.8729, 0.8929, 0.9152, 0.9424, 0.9699, 0.9891, 0.9304),
    "horse_13": (0.8607, 0.8787, 0.9009, 0.9308, 0.9658, 0.9898, 0.9211),
    "horse_18": (0.9481, 0.9625, 0.9732, 0.9835, 0.9938, 0.9990, 0.9767),
    "horse_20": (0.8392, 0.8498, 0.8615, 0.8777, 0.9050, 0.9350, 0.8780),
    "jacket_03": (0.7582, 0.7732, 0.7913, 0.8199, 0.8623, 0.9105, 0.8192),
    "juggling_06": (0.3120, 0.3175, 0.3238, 0.3340, 0.3503, 0.3757, 0.3356),
    "may28_axe_01": (0.9489, 0.9596, 0.9692, 0.9759, 0.9815, 0.9840, 0.9698),
    "may29_redbull_01": (0.6605, 0.6757, 0.6909, 0.7097, 0.7411, 0.7876, 0.7109),
    "rope_jumping_01": (0.5744, 0.5900, 0.6078, 0.6335, 0.6776, 0.7389, 0.6370),
    "street_crossing_08": (0.9329, 0.9437, 0.9534, 0.9630, 0.9699, 0.9739, 0.9561),
    "watermelon_01": (0.2820, 0.2835, 0.2864, 0.2928, 0.3007, 0.3116, 0.2928),
}

DISTILLED = {
    "ball_05": (0.7131, 0.7321, 0.7542, 0.7872, 0.8357, 0.8976, 0.7867),
    "ball_06": (0.7602, 0.7747, 0.7927, 0.8209, 0.8633, 0.9168, 0.8214),
    "basket_08": (0.7926, 0.8015, 0.8121, 0.8285, 0.8561, 0.8945, 0.8309),
    "basket_09": (0.8135, 0.8219, 0.8327, 0.8490, 0.8768, 0.9073, 0.8502),
    "eggs_04": (0.9794, 0.9842, 0.9875, 0.9910, 0.9937, 0.9965, 0.9887),
    "football_04": (0.7634, 0.7796, 0.7981, 0.8258, 0.8654, 0.9174, 0.8250),
    "horse_11": (0.7476, 0.7747, 0.8019, 0.8349, 0.8759, 0.9134, 0.8247),
    "horse_12": (0.8951, 0.9152, 0.9369, 0.9606, 0.9823, 0.9959, 0.9477),
    "horse_13": (0.8796, 0.8988, 0.9208, 0.9498, 0.9797, 0.9958, 0.9374),
    "horse_18": (0.9506, 0.9652, 0.9769, 0.9871, 0.9935, 0.9989, 0.9787),
    "horse_20": (0.8562, 0.8674, 0.8801, 0.8982, 0.9220, 0.9426, 0.8944),
    "jacket_03": (0.8584, 0.8724, 0.8851, 0.9036, 0.9322, 0.9642, 0.9027),
    "juggling_06": (0.6921, 0.7014, 0.7141, 0.7331, 0.7645, 0.7973, 0.7338),
    "may28_axe_01": (0.9475, 0.9591, 0.9662, 0.9711, 0.9739, 0.9753, 0.9655),
    "may29_redbull_01": (0.7671, 0.7871, 0.8073, 0.8328, 0.8691, 0.9043, 0.8280),
    "rope_jumping_01": (0.7653, 0.7837, 0.8038, 0.8340, 0.8761, 0.9272, 0.8317),
    "street_crossing_08": (0.8980, 0.9094, 0.9207, 0.9332, 0.9455, 0.9562, 0.9272),
    "watermelon_01": (0.8498, 0.8594, 0.8658, 0.8722, 0.8786, 0.8818, 0.8679),
}

OVERALL = {
    "baseline": (0.7134, 0.7256, 0.7388, 0.7568, 0.7824, 0.8149, 0.7553),
    "distilled": (0.8294, 0.8438, 0.8587, 0.8785, 0.9047, 0.9324, 0.8746),
}
