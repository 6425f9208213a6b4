import affinecheck.logic.action.check
import affinecheck.logic.action.suites


def get_actions():
    return {
        'instance_file_check':
        affinecheck.logic.action.check.run_instance_file,
        'comma_object_reflect':
        affinecheck.logic.action.check.reflect_comma_object,
        'split_pair_find':
        affinecheck.logic.action.check.find_split_pair,
        'zariski_closure_show':
        affinecheck.logic.action.check.zariski_close,
        'suite_run':
        affinecheck.logic.action.suites.run_suites,
    }
