"""Published q-expansions for the weight-3 form of level 8 and three of its companions.

Only nonzero coefficients are listed; every other a_n with n <= 25 is zero.
"""

F = {1: 1, 2: -2, 3: -2, 4: 4, 6: 4, 8: -8, 9: -5, 11: 14, 12: -8, 16: 16, 17: 2,
     18: 10, 19: -34, 22: -28, 24: 16, 25: 25}

H19 = {1: 1, 2: -512, 3: -3266, 4: 262144, 6: 1672192, 8: -134217728, 9: -376753733,
       11: -354349618, 12: -856162304, 16: 68719476736, 17: 119842447106,
       18: 192897911296, 19: 335013705758, 22: 181427004416, 24: 438355099648,
       25: 3814697265625}

H31 = {1: 1, 2: -32768, 3: -26595314, 4: 1073741824, 6: 871475249152,
       8: -35184372088832, 9: 501419594663947, 11: 6656187998706302,
       12: -28556500964212736, 16: 1152921504606846976, 17: -4422784932886529086,
       18: -16430517277948215296, 19: -23964789267887608402,
       22: -218109968341608103936, 24: 935739423595322933248,
       25: 931322574615478515625}

H59 = {1: 1, 2: -536870912, 3: 57281430144478, 4: 288230376151711744,
       6: -30752733642330195623936, 8: -154742504910672534362390528,
       9: -1428966457849531926967711205, 11: 2900908653579886134108518505134,
       12: 16510248157050893929760929349632,
       16: 83076749736557242056487941267521536,
       17: 955027058519269179716584293727217282,
       18: 767170525443087764404272509180968960,
       19: -15840463221028561793718151601779174594,
       22: -1557413474476125533674994636820167262208,
       24: -8863871985422232654486014081904498704384,
       25: 34694469519536141888238489627838134765625}

COMPANIONS = {33: (19, H19), 51: (31, H31), 99: (59, H59)}

H1_DISCS = {-3, -4, -7, -8, -11, -19, -43, -67, -163}


def as_list(table, bound=25):
    return [table.get(n, 0) for n in range(1, bound + 1)]
